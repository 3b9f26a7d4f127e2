#include <functional>
#include <random>

#include "doctest.h"
#include "latinv/lattice.hpp"

using namespace latinv;

namespace {

Series random_entry(const FieldCtxPtr& F, std::mt19937_64& rng, int lo, int hi, int maxterms = 3) {
    std::uniform_int_distribution<unsigned long long> cdist(0, F->size() - 1);
    std::uniform_int_distribution<int> edist(lo, hi);
    std::uniform_int_distribution<int> tdist(0, maxterms);
    Series s = Series::zero(F.get());
    int terms = tdist(rng);
    for (int t = 0; t < terms; ++t)
        s = s + Series::monomial(F.get(), F->from_index(cdist(rng)), edist(rng));
    return s;
}

SMat random_invertible(const FieldCtxPtr& F, std::mt19937_64& rng, int n, int lo = -2, int hi = 2) {
    while (true) {
        SMat A(F.get(), n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A.at(i, j) = random_entry(F, rng, lo, hi);
        try {
            smith_normal_form(A);
            return A;
        } catch (const Error&) {
            continue;
        }
    }
}

Lattice random_lattice(const FieldCtxPtr& F, std::mt19937_64& rng, int n) {
    return Lattice::from_cols(random_invertible(F, rng, n));
}

void check_zero_mat(const SMat& A) {
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) {
            CHECK(!A.at(i, j).known_nonzero());
            if (!A.at(i, j).is_zero()) CHECK(A.at(i, j).prec() >= 8);
        }
}

// brute-force elementary divisors: d_k = min valuation over k x k minors,
// exponents are successive differences, reported weakly decreasing
Cochar snf_minor_oracle(const SMat& A) {
    int n = A.rows();
    std::vector<int> subsets;
    Cochar lambda;
    int prev = 0;
    for (int k = 1; k <= n; ++k) {
        int best = Series::kExact;
        // iterate over k-subsets of rows and columns
        std::vector<int> rs(static_cast<size_t>(k));
        std::function<void(int, int)> rows_rec, cols_rec;
        std::vector<int> cs(static_cast<size_t>(k));
        auto det_rec = [&](auto&& self, std::vector<int> r, std::vector<int> c) -> Series {
            if (r.size() == 1) return A.at(r[0], c[0]);
            Series acc = Series::zero(A.ctx());
            for (size_t i = 0; i < r.size(); ++i) {
                std::vector<int> r2;
                for (size_t x = 0; x < r.size(); ++x)
                    if (x != i) r2.push_back(r[x]);
                std::vector<int> c2(c.begin() + 1, c.end());
                Series minor = self(self, r2, c2);
                Series term = A.at(r[i], c[0]) * minor;
                if (i % 2 == 1) term = -term;
                acc = acc + term;
            }
            return acc;
        };
        std::function<void(int, int, std::vector<int>&, const std::function<void()>&)> choose =
            [&](int start, int need, std::vector<int>& out, const std::function<void()>& fn) {
                if (need == 0) {
                    fn();
                    return;
                }
                for (int v = start; v <= n - need; ++v) {
                    out[out.size() - static_cast<size_t>(need)] = v;
                    choose(v + 1, need - 1, out, fn);
                }
            };
        choose(0, k, rs, [&]() {
            choose(0, k, cs, [&]() {
                Series d = det_rec(det_rec, rs, cs);
                if (d.known_nonzero()) best = std::min(best, d.val_nonzero());
            });
        });
        lambda.push_back(best - prev);
        prev = best;
    }
    std::reverse(lambda.begin(), lambda.end());
    return lambda;
}

}  // namespace

TEST_CASE("smith normal form on pinned examples") {
    auto F = FieldCtx::make(2, 1, 2);
    SMat I = SMat::identity(F.get(), 3);
    auto r = smith_normal_form(I);
    CHECK(r.mu == Cochar{0, 0, 0});

    SMat D = SMat::diag_tpow(F.get(), {2, -1});
    CHECK(smith_normal_form(D).mu == Cochar{2, -1});

    // [[1, 0], [a, t]] with a a unit: mu = (1, 0)
    SMat A(F.get(), 2, 2);
    A.at(0, 0) = Series::one(F.get());
    A.at(1, 0) = Series::constant(F->gen());
    A.at(1, 1) = Series::t(F.get());
    auto res = smith_normal_form(A);
    CHECK(res.mu == Cochar{1, 0});
    // U and V are invertible over O: their elementary divisors all vanish
    CHECK(smith_normal_form(res.U).mu == Cochar{0, 0});
    CHECK(smith_normal_form(res.V).mu == Cochar{0, 0});
    // A = U D V
    SMat recon = res.U * SMat::diag_tpow(F.get(), res.mu) * res.V;
    check_zero_mat(recon - A);
}

TEST_CASE("smith normal form matches the minor-valuation oracle") {
    std::mt19937_64 rng(2024);
    auto F = FieldCtx::make(2, 1, 3);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 200; ++trial) {
        int n = 2 + (trial % 2);
        SMat A(F.get(), n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A.at(i, j) = random_entry(F, rng, -2, 2, 2);
        Cochar mu;
        try {
            mu = smith_normal_form(A).mu;
        } catch (const Error&) {
            continue;
        }
        CHECK(mu == snf_minor_oracle(A));
        CHECK(weakly_decreasing(mu));
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("relative position basics") {
    auto F = FieldCtx::make(2, 1, 2);
    std::mt19937_64 rng(5);
    Lattice L0 = Lattice::standard(F.get(), 4);
    CHECK(relative_position(L0, L0) == Cochar{0, 0, 0, 0});
    CHECK(relative_position(L0, L0.scaled_t(1)) == Cochar{1, 1, 1, 1});

    Lattice M = Lattice::from_cols(SMat::diag_tpow(F.get(), {-1, 1, 0, 0}));
    CHECK(relative_position(L0, M) == Cochar{1, 0, 0, -1});

    // base-change invariance: inv(gM1, gM2) = inv(M1, M2)
    for (int trial = 0; trial < 10; ++trial) {
        Lattice M1 = random_lattice(F, rng, 3), M2 = random_lattice(F, rng, 3);
        SMat g = random_invertible(F, rng, 3);
        Cochar lhs = relative_position(Lattice::from_cols(g * M1.basis()),
                                       Lattice::from_cols(g * M2.basis()));
        CHECK(lhs == relative_position(M1, M2));
        // independence of basis choice: right-multiply by a unimodular matrix
        SMat u = random_invertible(F, rng, 3, 0, 2);
        if (smith_normal_form(u).mu == Cochar{0, 0, 0}) {
            CHECK(relative_position(Lattice::from_cols(M1.basis() * u), M2) ==
                  relative_position(M1, M2));
        }
    }
}

TEST_CASE("inv duality") {
    auto F = FieldCtx::make(2, 1, 2);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + (trial % 3);
        Lattice M1 = random_lattice(F, rng, n), M2 = random_lattice(F, rng, n);
        CHECK(relative_position(M2, M1) == negate_reverse(relative_position(M1, M2)));
    }
}

TEST_CASE("volume") {
    auto F = FieldCtx::make(2, 1, 2);
    Lattice L0 = Lattice::standard(F.get(), 4);
    CHECK(L0.volume() == 0);
    CHECK(L0.scaled_t(1).volume() == 4);
    Lattice L2 = Lattice::standard(F.get(), 2);
    CHECK(L2.scaled_t(-1).volume() == -2);
    // vol(tM) = vol(M) + h
    std::mt19937_64 rng(3);
    Lattice M = random_lattice(F, rng, 3);
    CHECK(M.scaled_t(1).volume() == M.volume() + 3);
}

TEST_CASE("sum and intersection") {
    auto F = FieldCtx::make(2, 1, 2);
    Lattice L0 = Lattice::standard(F.get(), 3);
    Lattice tL0 = L0.scaled_t(1);
    CHECK(lat_equal(lat_sum(L0, L0), L0));
    CHECK(lat_equal(lat_intersect(L0, L0), L0));
    CHECK(lat_equal(lat_sum(L0, tL0), L0));
    CHECK(lat_equal(lat_intersect(L0, tL0), tL0));

    // h=2: M1 = span{e1, t e2}, M2 = span{e1+e2, t e1}: intersection volume 2
    SMat B1(F.get(), 2, 2), B2(F.get(), 2, 2);
    B1.at(0, 0) = Series::one(F.get());
    B1.at(1, 1) = Series::t(F.get());
    B2.at(0, 0) = Series::one(F.get());
    B2.at(1, 0) = Series::one(F.get());
    B2.at(0, 1) = Series::t(F.get());
    Lattice M1 = Lattice::from_cols(B1), M2 = Lattice::from_cols(B2);
    CHECK(lat_intersect(M1, M2).volume() == 2);
}

TEST_CASE("modularity of volumes") {
    auto F = FieldCtx::make(2, 1, 2);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + (trial % 3);
        Lattice M1 = random_lattice(F, rng, n), M2 = random_lattice(F, rng, n);
        CHECK(lat_intersect(M1, M2).volume() + lat_sum(M1, M2).volume() ==
              M1.volume() + M2.volume());
    }
}

TEST_CASE("volume formula for intersections with probes") {
    // vol(g L0 cap j L0) = sum of positive parts of inv(j L0, g L0) + vol(j L0)
    auto F = FieldCtx::make(2, 1, 2);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + (trial % 3);
        Lattice G = random_lattice(F, rng, n), J = random_lattice(F, rng, n);
        Cochar mu = relative_position(J, G);
        int pos = 0;
        for (int v : mu)
            if (v > 0) pos += v;
        CHECK(lat_intersect(G, J).volume() == pos + J.volume());
    }
}

TEST_CASE("duals") {
    auto F = FieldCtx::make(2, 1, 2);
    std::mt19937_64 rng(41);
    Form std4 = standard_form(F.get(), 4);
    Lattice L0 = Lattice::standard(F.get(), 4);
    CHECK(lat_equal(lat_dual(L0, std4), L0));
    CHECK(lat_equal(lat_dual(L0.scaled_t(1), std4), L0.scaled_t(-1)));

    for (int trial = 0; trial < 25; ++trial) {
        Lattice M = random_lattice(F, rng, 4);
        Lattice D = lat_dual(M, std4);
        // involution and the inverse-transpose description
        CHECK(lat_equal(lat_dual(D, std4), M));
        CHECK(lat_equal(D, Lattice::from_cols(SMat::inverse(M.basis().transpose()))));
        CHECK(D.volume() == -M.volume());
        // reverses inclusions
        Lattice M2 = lat_intersect(M, random_lattice(F, rng, 4));
        CHECK(contains(M, M2));
        CHECK(contains(lat_dual(M2, std4), D));
    }

    // hermitian rank 2, gram identity, twist 1: dual of span{e1, t e2}
    Form herm;
    herm.gram = SMat::identity(F.get(), 2);
    herm.twist = 1;
    herm.kind = FormKind::Hermitian;
    Lattice M = Lattice::from_cols(SMat::diag_tpow(F.get(), {0, 1}));
    CHECK(lat_equal(lat_dual(M, herm), Lattice::from_cols(SMat::diag_tpow(F.get(), {0, -1}))));
}

TEST_CASE("membership") {
    auto F = FieldCtx::make(2, 1, 2);
    std::mt19937_64 rng(53);
    Lattice M = random_lattice(F, rng, 3);
    for (int j = 0; j < 3; ++j) {
        auto c = M.basis().col(j);
        CHECK(member(c, M));
        for (auto& e : c) e = e.shift(-1);
        CHECK(!member(c, M));
    }
    Lattice L0 = Lattice::standard(F.get(), 2);
    std::vector<Series> v{Series::one(F.get()), Series::t(F.get())};
    CHECK(member(v, L0));
}

TEST_CASE("lattice equality via mutual membership") {
    auto F = FieldCtx::make(2, 1, 2);
    std::mt19937_64 rng(61);
    Lattice M = random_lattice(F, rng, 3);
    SMat u = random_invertible(F, rng, 3, 0, 1);
    if (smith_normal_form(u).mu == Cochar{0, 0, 0}) {
        Lattice M2 = Lattice::from_cols(M.basis() * u);
        CHECK(lat_equal(M, M2));
        CHECK(M.canonical_key() == M2.canonical_key());
    }
    CHECK(!lat_equal(M, M.scaled_t(1)));
}
