#include <random>

#include "doctest.h"
#include "latinv/semimodule.hpp"

using namespace latinv;

namespace {
GammaVec gv(std::initializer_list<int> v) { return GammaVec(v); }
constexpr int INF = kGammaInf;
}  // namespace

TEST_CASE("start_gamma") {
    auto F = FieldCtx::make(2, 1, 8);
    Frame fr = Frame::isoclinic_gl(F, {{1, 2, 2}});

    CHECK(start_gamma(fr, fr.chain_vector(0, 3)) == gv({3, INF}));

    auto v = fr.chain_vector(0, 0);
    auto w = fr.chain_vector(1, 5);
    for (size_t i = 0; i < v.size(); ++i) v[i] = v[i] + w[i];
    CHECK(start_gamma(fr, v) == gv({0, 5}));

    // eps shifts every finite coordinate by h
    auto ve = fr.apply_eps(v, 1);
    CHECK(start_gamma(fr, ve) == gv({2, 7}));

    CHECK_THROWS_AS(start_gamma(fr, fr.zero_vector()), Error);
}

TEST_CASE("chart of rectangular lattices") {
    auto F = FieldCtx::make(2, 1, 2);
    Frame fr = Frame::superbasic_res(F, 3, {1, 1});
    // lattice generated by all e_{i,tau} with i >= l_tau
    Lattice M = rectangular_lattice(fr, {2, -1});
    SemiModuleChart chart = chart_of_lattice(fr, M);
    CHECK(chart == rectangular_chart(3, {2, -1}));
    CHECK(chart.contains(0, 2));
    CHECK(chart.contains(0, 7));
    CHECK(!chart.contains(0, 1));
}

TEST_CASE("chart shifts under eps and Phi") {
    auto F = FieldCtx::make(2, 1, 4);
    Frame fr = Frame::superbasic_res(F, 3, {1});
    Lattice M = rectangular_lattice(fr, {1});
    SemiModuleChart c1 = chart_of_lattice(fr, M);
    SemiModuleChart c2 = chart_of_lattice(fr, M.scaled_t(1));
    for (size_t i = 0; i < c1.minima[0].size(); ++i)
        CHECK(c2.minima[0][i] == c1.minima[0][i] + 3);
    // chart of a Dieudonne lattice is +m stable: Phi(M) has chart A + m
    SemiModuleChart c3 = chart_of_lattice(fr, fr.phi_lattice(M));
    for (size_t i = 0; i < c1.minima[0].size(); ++i)
        CHECK(c3.minima[0][i] == c1.minima[0][i] + 1);
}

TEST_CASE("mu_to_chart round trip") {
    std::mt19937_64 rng(15);
    std::uniform_int_distribution<int> mudist(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        int h = 2 + trial % 3;
        int d = 1 + trial % 2;
        std::vector<std::vector<int>> mu(static_cast<size_t>(d), std::vector<int>(static_cast<size_t>(h)));
        for (auto& comp : mu)
            for (auto& v : comp) v = mudist(rng);
        CHECK(chart_to_mu(mu_to_chart(mu, h)) == mu);
    }
    // pinned: h=2, mu=(1,0) gives minima {2, 3}
    SemiModuleChart c = mu_to_chart({{1, 0}}, 2);
    CHECK(c.minima[0] == std::vector<int>{2, 3});
    // mu = 0 gives the chart Z_{>= 1}
    CHECK(mu_to_chart({{0, 0, 0}}, 3) == rectangular_chart(3, {1}));
}

TEST_CASE("iwahori translates have chart A^mu") {
    auto F = FieldCtx::make(2, 1, 4);
    std::mt19937_64 rng(33);
    std::uniform_int_distribution<unsigned long long> cdist(0, F->size() - 1);
    std::uniform_int_distribution<int> mudist(-2, 2);
    Frame fr = Frame::superbasic_res(F, 3, {1});
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<int>> mu{{mudist(rng), mudist(rng), mudist(rng)}};
        // lower-triangular-mod-t Iwahori element times t^mu
        SMat g(F.get(), 3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j)
                    g.at(i, j) = Series::one(F.get());
                else if (i > j)
                    g.at(i, j) = Series::monomial(F.get(), F->from_index(cdist(rng)), 0);
                else
                    g.at(i, j) = Series::monomial(F.get(), F->from_index(cdist(rng)), 1);
            }
        SMat gm = g * SMat::diag_tpow(F.get(), mu[0]);
        CHECK(chart_of_lattice(fr, Lattice::from_cols(gm)) == mu_to_chart(mu, 3));
    }
}

TEST_CASE("gamma_member on the standard lattice") {
    auto F = FieldCtx::make(2, 1, 8);
    Frame fr = Frame::isoclinic_gl(F, {{1, 2, 2}});
    Lattice M0 = fr.standard_lattice();
    CHECK(gamma_member(fr, M0, gv({0, 0})));
    CHECK(gamma_member(fr, M0, gv({0, INF})));
    CHECK(gamma_member(fr, M0, gv({3, 7})));
    CHECK(!gamma_member(fr, M0, gv({-1, 0})));
    CHECK(!gamma_member(fr, M0, gv({0, -2})));
   CHECK(!gamma_member(fr, M0, gv({INF, -1})));
}

namespace {

// Independent membership oracle: decide whether some w in M has the given
// start vector by F_p-linear rank computations on digit-truncated
// coordinates of w = B x.  (A different route than the series-lattice
// volume criterion used by gamma_member.)
struct FpRankOracle {
    const Frame& fr;
    const Lattice& M;
    int K;  // t-degree truncation of the coordinates x_j

    int nullity(const std::vector<std::pair<int, int>>& vanish) const {
        // unknowns: digits of x_j coefficients of t^0..t^{K-1}
        const FieldCtx* F = fr.field();
        int D = F->deg();
        int r = M.rank();
        int ncols = r * K * D;
        std::vector<std::vector<uint8_t>> rows;
        // vanish: (ambient row, t-exponent) pairs that must be zero in w
        for (auto [row, expo] : vanish) {
            std::vector<std::vector<uint8_t>> block(static_cast<size_t>(D),
                                                    std::vector<uint8_t>(static_cast<size_t>(ncols), 0));
            for (int j = 0; j < r; ++j) {
                const Series& b = M.basis().at(row, j);
                for (int k = 0; k < K; ++k) {
                    // contribution of x_j's t^k digit through b's t^{expo-k} coefficient
                    if (!b.known_nonzero() && b.is_zero()) continue;
                    int need = expo - k;
                    if (need >= b.prec()) continue;
                    FFElem c = b.coeff(need);
                    if (c.is_zero()) continue;
                    // digit d of x contributes c * basis_digit(d); expand over F_p
                    for (int d = 0; d < D; ++d) {
                        FFElem unit = F->zero();
                        unit.c[static_cast<size_t>(d)] = 1;
                        FFElem prod = c * unit;
                        for (int out = 0; out < D; ++out)
                            block[static_cast<size_t>(out)][static_cast<size_t>((j * K + k) * D + d)] =
                                static_cast<uint8_t>((block[static_cast<size_t>(out)]
                                                           [static_cast<size_t>((j * K + k) * D + d)] +
                                                      prod.c[static_cast<size_t>(out)]) %
                                                     F->p());
                    }
                }
            }
            for (auto& b : block) rows.push_back(std::move(b));
        }
        // rank over F_p
        int p = F->p();
        int rank = 0;
        size_t rr = 0;
        for (int c = 0; c < ncols && rr < rows.size(); ++c) {
            size_t piv = rr;
            while (piv < rows.size() && rows[piv][static_cast<size_t>(c)] == 0) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[rr], rows[piv]);
            int inv = 1;
            for (int v = 1; v < p; ++v)
                if (v * rows[rr][static_cast<size_t>(c)] % p == 1) inv = v;
            for (size_t i = 0; i < rows.size(); ++i) {
                if (i == rr || rows[i][static_cast<size_t>(c)] == 0) continue;
                int f = rows[i][static_cast<size_t>(c)] * inv % p;
                for (int cc = c; cc < ncols; ++cc)
                    rows[i][static_cast<size_t>(cc)] = static_cast<uint8_t>(
                        (rows[i][static_cast<size_t>(cc)] + p - f * rows[rr][static_cast<size_t>(cc)] % p) % p);
            }
            ++rank;
            ++rr;
        }
        return ncols - rank;
    }

    bool contains(const GammaVec& g) const {
        // conditions "w vanishes below gamma" per chain coordinate
        auto conditions_below = [&](const GammaVec& bound) {
            std::vector<std::pair<int, int>> vanish;
            for (int c = 0; c < fr.num_components(); ++c) {
                int h = fr.chain_len(c);
                int lim = bound[static_cast<size_t>(c)];
                int horizon = (lim >= kGammaInf) ? h * (K - 2) : lim;
                for (int idx = 0; idx < horizon; ++idx)
                    vanish.emplace_back(fr.coord(c, idx % h), idx / h);
            }
            return vanish;
        };
        int n0 = nullity(conditions_below(g));
        for (int c = 0; c < fr.num_components(); ++c) {
            if (g[static_cast<size_t>(c)] >= kGammaInf) continue;
            GammaVec bumped = g;
            bumped[static_cast<size_t>(c)] += 1;
            if (nullity(conditions_below(bumped)) >= n0) return false;
        }
        return n0 > 0;
    }
};

}  // namespace

TEST_CASE("gamma_member on a generated lattice") {
    auto F = FieldCtx::make(2, 1, 8);
    Frame fr = Frame::isoclinic_gl(F, {{1, 2, 2}});
    // generic v with gamma(v) = (0, 0)
    auto v = fr.zero_vector();
    v[static_cast<size_t>(fr.coord(0, 0))] = Series::constant(F->gen());
    v[static_cast<size_t>(fr.coord(1, 0))] =
        Series::constant(F->frobenius(F->gen(), 3) + F->one());
    Lattice M = dieudonne_closure(fr, v);
    REQUIRE(M.rank() == 4);

    int box = 6;
    // soundness: start vectors of orbit elements, closed under min and
    // shifts, all belong to A(M)
    {
        std::set<GammaVec> lower;
        std::vector<std::vector<Series>> level{v};
        lower.insert(start_gamma(fr, v));
        for (int k = 1; k <= 8; ++k) {
            std::vector<std::vector<Series>> next;
            for (size_t y = 0; y < level.size(); ++y) next.push_back(fr.apply_phi(level[y]));
            next.push_back(fr.apply_v_op(level.back()));
            for (const auto& w : next) lower.insert(start_gamma(fr, w));
            level = std::move(next);
        }
        auto in_box = [&](const GammaVec& g) {
            for (int x : g)
                if (x < INF && (x > box || x < 0)) return false;
            return true;
        };
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<GammaVec> add;
            for (const auto& a : lower) {
                GammaVec am = a;
                for (auto& x : am)
                    if (x < INF) x += 1;
                if (in_box(am) && !lower.count(am)) add.push_back(am);
                for (const auto& b : lower) {
                    GammaVec mn(a.size());
                    for (size_t i = 0; i < a.size(); ++i) mn[i] = std::min(a[i], b[i]);
                    if (!lower.count(mn)) add.push_back(mn);
                }
            }
            for (auto& g : add)
                if (lower.insert(g).second) grew = true;
        }
        for (const auto& g : lower)
            if (in_box(g)) CHECK(gamma_member(fr, M, g));
    }

    // exactness: independent F_p-rank oracle over the whole box grid
    FpRankOracle oracle{fr, M, box + 4};
    for (const auto& g : box_grid(2, box)) CHECK(gamma_member(fr, M, g) == oracle.contains(g));

    // the two pinned values from the generated-lattice example
    CHECK(!gamma_member(fr, M, gv({0, 1})));
    CHECK(gamma_member(fr, M, gv({1, 1})));
}

TEST_CASE("A(M) of the standard lattice satisfies the multi-semimodule axioms") {
    auto F = FieldCtx::make(2, 1, 8);
    Frame fr = Frame::isoclinic_gl(F, {{1, 3, 2}});
    Lattice M0 = fr.standard_lattice();
    BoxedMultiSemiModule A = boxed_A(fr, M0, 5);
    int m = 1, n = 2;
    for (const auto& a : A.members) {
        GammaVec am = a, an = a;
        for (auto& x : am)
            if (x < INF) x += m;
        for (auto& x : an)
            if (x < INF) x += n;
        auto in_box = [&](const GammaVec& g) {
            for (int x : g)
                if (x < INF && x > A.box) return false;
            return true;
        };
        if (in_box(am)) CHECK(A.contains(am));
        if (in_box(an)) CHECK(A.contains(an));
        for (const auto& b : A.members) {
            GammaVec mn(a.size());
            for (size_t i = 0; i < a.size(); ++i) mn[i] = std::min(a[i], b[i]);
            CHECK(A.contains(mn));
        }
    }
}

TEST_CASE("A_gen generators and membership") {
    SUBCASE("l = 1 is the numerical semigroup") {
        BoxedMultiSemiModule A = agen_box(2, 3, 1, 12);
        for (int v = 0; v <= 12; ++v) {
            bool expect = (v != 1);  // 2N + 3N misses only 1 below 12
            CHECK(A.contains(gv({v})) == expect);
        }
    }
    SUBCASE("(m,n,l) = (1,1,2) pinned values") {
        BoxedMultiSemiModule A = agen_box(1, 1, 2, 6);
        CHECK(A.contains(gv({0, 0})));
        CHECK(!A.contains(gv({0, 1})));
        CHECK(A.contains(gv({1, 1})));
        CHECK(A.contains(gv({INF, 1})));
        CHECK(!A.contains(gv({INF, 0})));
        CHECK(agen_char(gv({0, 0}), 1, 1));
        CHECK(!agen_char(gv({0, 1}), 1, 1));
        CHECK(agen_char(gv({1, 1}), 1, 1));
    }
    SUBCASE("generators satisfy the characterization") {
        for (auto [m, n, l] : std::vector<std::array<int, 3>>{{1, 1, 2}, {2, 3, 2}, {2, 1, 3}}) {
            for (int i = 1; i <= l - 1; ++i) {
                GammaVec g(static_cast<size_t>(l));
                for (int k = 0; k < l; ++k) g[static_cast<size_t>(k)] = (k < i) ? INF : i * m * n;
                std::sort(g.begin(), g.end());
                do {
                    CHECK(agen_char(g, m, n));
                } while (std::next_permutation(g.begin(), g.end()));
            }
            CHECK(agen_char(GammaVec(static_cast<size_t>(l), 0), m, n));
        }
    }
    SUBCASE("box equality with the characterization") {
        for (auto [m, n, l] : std::vector<std::array<int, 3>>{{1, 1, 2}, {1, 2, 2}, {2, 1, 3}}) {
            int box = 3 * m * n * l;
            BoxedMultiSemiModule A = agen_box(m, n, l, box);
            for (const auto& g : box_grid(l, box)) CHECK(A.contains(g) == agen_char(g, m, n));
        }
    }
}
