#include "latinv/casestudies.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "latinv/eolevel.hpp"

namespace latinv {

namespace {

std::vector<std::vector<int>> triples(int n) {
    std::vector<std::vector<int>> out;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) out.push_back({a, b, c});
    return out;
}

}  // namespace

std::vector<std::vector<MPoly>> gs_matrix_A(int p) {
    const int NV = 8;
    auto X = [&](int i) { return MPoly::variable(p, NV, i); };  // x_{i+1}
    MPoly lam = MPoly::variable(p, NV, 6);
    MPoly zero(p, NV), one = MPoly::constant(p, NV, 1);
    // rows from the displayed matrix: identity block, x_i lambda column,
    // then the x_i x_j columns with one zero per row
    std::vector<std::vector<MPoly>> A(3, std::vector<MPoly>(7, zero));
    A[0][0] = one;
    A[1][1] = one;
    A[2][2] = one;
    A[0][3] = X(0) * lam;
    A[1][3] = X(1) * lam;
    A[2][3] = X(2) * lam;
    A[0][4] = zero;
    A[1][4] = X(1) * X(3);
    A[2][4] = X(2) * X(3);
    A[0][5] = X(0) * X(4);
    A[1][5] = zero;
    A[2][5] = X(2) * X(4);
    A[0][6] = X(0) * X(5);
    A[1][6] = X(1) * X(5);
    A[2][6] = zero;
    return A;
}

std::vector<std::vector<MPoly>> gs_matrix_B(int p) {
    const int NV = 8;
    auto X = [&](int i) { return MPoly::variable(p, NV, i); };
    MPoly gam = MPoly::variable(p, NV, 7);
    MPoly zero(p, NV), one = MPoly::constant(p, NV, 1);
    std::vector<std::vector<MPoly>> B(3, std::vector<MPoly>(7, zero));
    B[0][0] = one;
    B[1][1] = one;
    B[2][2] = one;
    B[1][4] = X(1) * X(3);
    B[2][4] = X(2) * X(3);
    B[0][5] = X(0) * X(4);
    B[2][5] = X(2) * X(4);
    B[0][6] = X(0) * X(5);
    B[1][6] = gam;
    return B;
}

MinorList minor_list(const std::vector<std::vector<MPoly>>& A) {
    MinorList out;
    for (const auto& J : triples(7)) {
        std::vector<std::vector<MPoly>> sub(3);
        for (int r = 0; r < 3; ++r)
            for (int j : J) sub[static_cast<size_t>(r)].push_back(A[static_cast<size_t>(r)][static_cast<size_t>(j)]);
        MPoly d = mpoly_det(sub);
        if (!d.is_zero()) {
            out.support.push_back(J);
            out.minors.push_back(std::move(d));
        }
    }
    return out;
}

GSReport gs_minor_lists(int p) {
    GSReport rep;
    rep.total_triples = static_cast<int>(triples(7).size());
    auto A = gs_matrix_A(p);
    auto sub_lambda = [&](int v) {
        auto M = A;
        for (auto& row : M)
            for (auto& f : row) f = f.substitute(6, v);
        return M;
    };
    MinorList LA = minor_list(A);
    MinorList LA1 = minor_list(sub_lambda(1));
    MinorList LA0 = minor_list(sub_lambda(0));
    MinorList LB = minor_list(gs_matrix_B(p));
    rep.count_A_lambda = LA.count();
    rep.count_A1 = LA1.count();
    rep.count_A0 = LA0.count();
    rep.count_B = LB.count();
    rep.lists_equal_A0_B = LA0.support == LB.support;
    rep.rank_A1 = mpoly_span_rank(LA1.minors);
    rep.rank_A0 = mpoly_span_rank(LA0.minors);
    rep.rank_B = mpoly_span_rank(LB.minors);
    rep.collinear_triples_A1 = rep.total_triples - rep.count_A1;
    // no four of the seven points lie on a line: every 4-subset contains a
    // triple with nonvanishing minor
    std::set<std::vector<int>> zeroset;
    for (const auto& J : triples(7)) {
        bool nz = std::find(LA1.support.begin(), LA1.support.end(), J) != LA1.support.end();
        if (!nz) zeroset.insert(J);
    }
    rep.no_four_point_line = true;
    for (int a = 0; a < 7 && rep.no_four_point_line; ++a)
        for (int b = a + 1; b < 7 && rep.no_four_point_line; ++b)
            for (int c = b + 1; c < 7 && rep.no_four_point_line; ++c)
                for (int d = c + 1; d < 7 && rep.no_four_point_line; ++d) {
                    int zero_triples = 0;
                    for (const auto& J : triples(7)) {
                        bool inside = true;
                        for (int j : J)
                            inside = inside && (j == a || j == b || j == c || j == d);
                        if (inside && zeroset.count(J)) ++zero_triples;
                    }
                    if (zero_triples == 4) rep.no_four_point_line = false;
                }
    return rep;
}

std::pair<MPoly, MPoly> cauchy_binet(const std::vector<std::vector<MPoly>>& A,
                                     const std::vector<std::vector<int>>& phi,
                                     const std::vector<int>& J) {
    int p = A[0][0].p();
    int nv = A[0][0].nvars();
    // product A * phi
    std::vector<std::vector<MPoly>> AP(3, std::vector<MPoly>(7, MPoly(p, nv)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 7; ++j) {
            MPoly acc(p, nv);
            for (int k = 0; k < 7; ++k)
                acc = acc + A[static_cast<size_t>(i)][static_cast<size_t>(k)].scale(phi[static_cast<size_t>(k)][static_cast<size_t>(j)]);
            AP[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(acc);
        }
    std::vector<std::vector<MPoly>> sub(3);
    for (int r = 0; r < 3; ++r)
        for (int j : J) sub[static_cast<size_t>(r)].push_back(AP[static_cast<size_t>(r)][static_cast<size_t>(j)]);
    MPoly lhs = mpoly_det(sub);

    MPoly rhs(p, nv);
    for (const auto& Jp : triples(7)) {
        // det(A_{J'})
        std::vector<std::vector<MPoly>> subA(3);
        for (int r = 0; r < 3; ++r)
            for (int j : Jp) subA[static_cast<size_t>(r)].push_back(A[static_cast<size_t>(r)][static_cast<size_t>(j)]);
        MPoly dA = mpoly_det(subA);
        if (dA.is_zero()) continue;
        // det(phi_{J',J}) over F_p
        int d = 0;
        {
            int m[3][3];
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c)
                    m[r][c] = phi[static_cast<size_t>(Jp[static_cast<size_t>(r)])][static_cast<size_t>(J[static_cast<size_t>(c)])];
            d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            d %= p;
            if (d < 0) d += p;
        }
        if (d) rhs = rhs + dA.scale(d);
    }
    return {lhs, rhs};
}

bool cauchy_binet_suite(int p, int num_phi, std::mt19937_64& rng) {
    auto A = gs_matrix_A(p);
    std::uniform_int_distribution<int> dist(0, p - 1);
    for (int t = 0; t < num_phi; ++t) {
        std::vector<std::vector<int>> phi(7, std::vector<int>(7, 0));
        if (t == 0) {
            for (int i = 0; i < 7; ++i) phi[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
        } else if (t == 1) {
            for (int i = 0; i < 7; ++i) phi[static_cast<size_t>(i)][static_cast<size_t>((i + 2) % 7)] = 1;
        } else {
            for (auto& row : phi)
                for (auto& v : row) v = dist(rng);
        }
        for (const auto& J : triples(7)) {
            auto [lhs, rhs] = cauchy_binet(A, phi, J);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

long long hermitian_count(int p, int m, long long budget) {
    auto F = FieldCtx::make(p, 1, 2);
    unsigned long long q2 = F->size();
    // points with first nonzero coordinate normalized to 1
    long long total_work = 1;
    for (int k = 0; k < m - 1; ++k) {
        total_work *= static_cast<long long>(q2);
        if (total_work > budget) raise(ErrCode::BudgetExceeded, "hermitian enumeration too large");
    }
    long long count = 0;
    std::vector<FFElem> norm_of(q2, F->zero());
    for (unsigned long long i = 0; i < q2; ++i) {
        FFElem x = F->from_index(i);
        norm_of[i] = F->pow(x, p + 1);
    }
    for (int lead = 0; lead < m; ++lead) {
        // coordinates: x_0..x_{lead-1} = 0, x_lead = 1, the rest free
        int free = m - 1 - lead;
        long long tuples = 1;
        for (int k = 0; k < free; ++k) tuples *= static_cast<long long>(q2);
        for (long long code = 0; code < tuples; ++code) {
            FFElem s = norm_of[1];  // x_lead = 1
            long long c = code;
            for (int k = 0; k < free; ++k) {
                s = s + norm_of[static_cast<unsigned long long>(c % static_cast<long long>(q2))];
                c /= static_cast<long long>(q2);
            }
            if (s.is_zero()) ++count;
        }
    }
    return count;
}

ThetaPsi theta_psi(int p, int m) {
    if (m < 2) raise(ErrCode::BadInput, "theta_psi needs m >= 2");
    auto ipow = [](long long b, int e) {
        long long r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    };
    ThetaPsi out;
    long long sgn = (m % 2 == 0) ? 1 : -1;
    out.theta_closed = (ipow(p, m) - sgn) * (ipow(p, m - 1) + sgn) / (static_cast<long long>(p) * p - 1);
    // recursion Theta_m = (p+1)(p^{2m-2}-1)/(p^2-1) - p Theta_{m-1}
    long long th = p + 1;
    for (int k = 3; k <= m; ++k)
        th = (p + 1) * (ipow(p, 2 * k - 2) - 1) / (static_cast<long long>(p) * p - 1) - p * th;
    out.theta_rec = (m == 2) ? p + 1 : th;
    out.psi = (ipow(p, 2 * m - 2) - 1) / (static_cast<long long>(p) * p - 1);
    return out;
}

std::pair<Lattice, int> vw_tau_closure(const Frame& fr, const Lattice& M0) {
    if (fr.kind() != FrameKind::UnitaryN0) raise(ErrCode::BadSpec, "needs a unitary N_0 frame");
    int n = fr.unitary_n();
    const Form& f = fr.form();
    auto check_vertex_entry = [&](const Lattice& M) {
        Lattice Md = lat_dual(M, f);
        long long two_vol = 2LL * M.volume();
        if (two_vol % n != 0)
            raise(ErrCode::NotVertexChain, "volume incompatible with a vertex chain");
        int i = static_cast<int>(two_vol / n);
        Lattice lo = Md.scaled_t(i + 1);
        Lattice hi = Md.scaled_t(i);
        if (!(contains(M, lo) && lo.volume() == M.volume() + 1 && contains(hi, M) &&
              M.volume() == hi.volume() + (n - 1)))
            raise(ErrCode::NotVertexChain, "eps^{i+1}M^v c^1 M c^{n-1} eps^i M^v fails");
        return i;
    };
    check_vertex_entry(M0);
    Lattice L = M0;
    int d = 0;
    while (!contains(L, fr.tau0_lattice(L))) {
        L = lat_sum(L, fr.tau0_lattice(L));
        ++d;
        if (2 * d + 1 > n)
            raise(ErrCode::NonTerminating, "tau-closure exceeded (n-1)/2 steps");
    }
    // chain (4.3): eps Lambda^v c^{2d+1} Lambda c^{n-2d-1} Lambda^v
    Lattice Ld = lat_dual(L, f);
    // renormalize to the i = 0 component convention used by the chain
    long long two_vol = 2LL * M0.volume();
    int i0 = static_cast<int>(two_vol / n);
    Lattice Ld_i = Ld.scaled_t(i0);
    if (!(contains(L, Ld_i.scaled_t(1)) && Ld_i.scaled_t(1).volume() == L.volume() + (2 * d + 1) &&
          contains(Ld_i, L) && L.volume() == Ld_i.volume() + (n - 2 * d - 1)))
        raise(ErrCode::NotVertexChain, "closure chain (2d+1, n-2d-1) fails");
    return {L, d};
}

VWReport vw_demo(int n, int p, int e, int max_samples) {
    if (n < 3 || n % 2 == 0) raise(ErrCode::BadSpec, "vw_demo supports odd n >= 3");
    VWReport rep;
    rep.n = n;
    rep.p = p;
    rep.e = e;
    auto F = FieldCtx::make(p, 1, 2 * e);
    Frame fr = Frame::unitary_n0(F, n);
    const FieldCtx* C = F.get();

    // c in F_{p^2} with c^{p+1} = -1
    FFElem cform = C->zero();
    for (unsigned long long i = 1; i < C->size(); ++i) {
        FFElem x = C->from_index(i);
        if (C->frobenius_p(x, 2) != x) continue;  // need x in F_{p^2}
        if (C->pow(x, p + 1) == -C->one()) {
            cform = x;
            break;
        }
    }
    if (cform.is_zero()) raise(ErrCode::BadSpec, "no norm -1 element found");

    // self-dual tau-stable Lambda: pairs u_k = eps^{-1}(g_{2k} + [c] g_{2k+1})
    SMat gens(C, n, n);
    for (int k = 0; 2 * k + 1 < n; ++k) {
        auto u = fr.zero_vector();
        u[static_cast<size_t>(2 * k)] = Series::t_pow(C, -1);
        u[static_cast<size_t>(2 * k + 1)] = Series::monomial(C, cform, -1);
        gens.set_col(2 * k, u);
        auto g2 = fr.zero_vector();
        g2[static_cast<size_t>(2 * k + 1)] = Series::one(C);
        gens.set_col(2 * k + 1, g2);
    }
    {
        auto gn = fr.zero_vector();
        gn[static_cast<size_t>(n - 1)] = Series::one(C);
        gens.set_col(n - 1, gn);
    }
    Lattice Lambda = Lattice::from_cols(gens);
    if (!lat_equal(lat_dual(Lambda, fr.form()), Lambda))
        raise(ErrCode::BadSpec, "constructed Lambda is not self-dual");
    if (!lat_equal(fr.tau0_lattice(Lambda), Lambda))
        raise(ErrCode::BadSpec, "constructed Lambda is not tau-stable");

    // the induced hermitian form on U = Lambda/eps Lambda via lifted pairs
    auto pair_mod = [&](const std::vector<Series>& a, const std::vector<Series>& b) {
        // {a, b} = a^T G sigma(b)
        Series acc = Series::zero(C);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Series& g = fr.form().gram.at(i, j);
                if (g.is_zero()) continue;
                acc = acc + a[static_cast<size_t>(i)] * g * b[static_cast<size_t>(j)].sigma(1);
            }
        return acc;
    };

    // enumerate isotropic lines of Lambda/eps Lambda; for each build the
    // corank-1 preimage of the orthogonal hyperplane
    unsigned long long Q = C->size();
    long long scanned = 0;
    std::mt19937_64 rng(7);
    std::vector<unsigned long long> codes;
    {
        // all projective points of P^{n-1}(F_Q), coded
        unsigned long long total = 1;
        for (int k = 0; k < n; ++k) total *= Q;
        for (unsigned long long code = 0; code < total; ++code) codes.push_back(code);
    }
    rep.chains_ok = true;
    rep.volume_law_ok = true;
    for (unsigned long long code : codes) {
        if (rep.samples >= max_samples) break;
        // decode a vector in Lambda-coordinates
        std::vector<FFElem> coeff;
        unsigned long long c = code;
        bool lead_one = false;
        for (int k = 0; k < n; ++k) {
            coeff.push_back(C->from_index(c % Q));
            c /= Q;
        }
        int lead = -1;
        for (int k = 0; k < n; ++k)
            if (!coeff[static_cast<size_t>(k)].is_zero()) {
                lead = k;
                break;
            }
        if (lead < 0) continue;
        lead_one = coeff[static_cast<size_t>(lead)].is_one();
        if (!lead_one) continue;  // one representative per line
        ++scanned;
        auto v = fr.zero_vector();
        for (int k = 0; k < n; ++k) {
            if (coeff[static_cast<size_t>(k)].is_zero()) continue;
            auto bk = Lambda.basis().col(k);
            for (int i = 0; i < n; ++i)
                v[static_cast<size_t>(i)] =
                    v[static_cast<size_t>(i)] + Series::constant(coeff[static_cast<size_t>(k)]) * bk[static_cast<size_t>(i)];
        }
        // isotropy mod eps and non-rationality of the line
        Series norm = pair_mod(v, v);
        if (norm.known_nonzero() && norm.val_nonzero() <= 0) continue;
        bool rational = true;
        for (const auto& x : coeff) rational = rational && C->frobenius(x, 2) == x;
        if (rational) continue;
        rep.found_nonrational = true;
        // M0 = { w in Lambda : {w, v} in eps O } (preimage of the orthogonal
        // hyperplane of the line)
        SMat m0(C, n, n + 1);
        int col = 0;
        // eps Lambda plus all basis combinations orthogonal to v mod eps:
        // solve the linear condition on Lambda-coordinates
        std::vector<FFElem> cond(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) {
            Series s = pair_mod(Lambda.basis().col(k), v);
            cond[static_cast<size_t>(k)] = s.is_zero() ? C->zero() : s.coeff(0);
        }
        // kernel vectors of the single condition give M0-generators
        int piv = -1;
        for (int k = 0; k < n; ++k)
            if (!cond[static_cast<size_t>(k)].is_zero()) {
                piv = k;
                break;
            }
        if (piv < 0) continue;  // v orthogonal to everything mod eps: skip
        SMat gens2(C, n, 2 * n);
        col = 0;
        for (int k = 0; k < n; ++k) {
            auto bk = Lambda.basis().col(k);
            if (k == piv) {
                for (auto& x : bk) x = x.shift(1);  // eps * pivot column
                gens2.set_col(col++, bk);
                continue;
            }
            if (!cond[static_cast<size_t>(k)].is_zero()) {
                // bk - (cond_k / cond_piv) b_piv
                FFElem f = cond[static_cast<size_t>(k)] * C->inv(cond[static_cast<size_t>(piv)]);
                auto bp = Lambda.basis().col(piv);
                for (int i = 0; i < n; ++i)
                    bk[static_cast<size_t>(i)] =
                        bk[static_cast<size_t>(i)] - Series::constant(f) * bp[static_cast<size_t>(i)];
            }
            gens2.set_col(col++, bk);
        }
        for (int k = 0; k < n; ++k) {
            auto bk = Lambda.basis().col(k);
            for (auto& x : bk) x = x.shift(1);
            gens2.set_col(col++, bk);
        }
        Lattice M0 = Lattice::from_cols(gens2);
        auto [closure, d] = vw_tau_closure(fr, M0);
        rep.d_values.push_back(d);
        rep.volume_law_ok = rep.volume_law_ok && (closure.volume() == M0.volume() - d);
        ++rep.samples;
    }
    // also the trivial sample: a tau-invariant M0 has d = 0
    {
        // M0 from the rational line (1 : 0 : ... : 0)
        // (reuse Lambda's first basis vector; it is isotropic by construction)
        auto v = Lambda.basis().col(0);
        // same construction, rationality allowed
        std::vector<FFElem> cond(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) {
            Series s = pair_mod(Lambda.basis().col(k), v);
            cond[static_cast<size_t>(k)] = s.is_zero() ? C->zero() : s.coeff(0);
        }
        int piv = -1;
        for (int k = 0; k < n; ++k)
            if (!cond[static_cast<size_t>(k)].is_zero()) piv = piv < 0 ? k : piv;
        if (piv >= 0) {
            SMat gens2(C, n, 2 * n);
            int col = 0;
            for (int k = 0; k < n; ++k) {
                auto bk = Lambda.basis().col(k);
                if (k == piv) {
                    for (auto& x : bk) x = x.shift(1);
                    gens2.set_col(col++, bk);
                    continue;
                }
                if (!cond[static_cast<size_t>(k)].is_zero()) {
                    FFElem f = cond[static_cast<size_t>(k)] * C->inv(cond[static_cast<size_t>(piv)]);
                    auto bp = Lambda.basis().col(piv);
                    for (int i = 0; i < n; ++i)
                        bk[static_cast<size_t>(i)] =
                            bk[static_cast<size_t>(i)] - Series::constant(f) * bp[static_cast<size_t>(i)];
                }
                gens2.set_col(col++, bk);
            }
            for (int k = 0; k < n; ++k) {
                auto bk = Lambda.basis().col(k);
                for (auto& x : bk) x = x.shift(1);
                gens2.set_col(col++, bk);
            }
            Lattice M0 = Lattice::from_cols(gens2);
            if (lat_equal(fr.tau0_lattice(M0), M0)) {
                auto [closure, d] = vw_tau_closure(fr, M0);
                rep.d_values.push_back(d);
                rep.volume_law_ok = rep.volume_law_ok && d == 0 && lat_equal(closure, M0);
            }
        }
    }
    return rep;
}

StratumDescriptor gsp4_classify(const Frame& fr, const Lattice& M, const ProbeSet& probes) {
    Cochar mu{1, 1, 0, 0};
    if (!in_adlv(fr, M, mu)) raise(ErrCode::NotInADLV, "lattice not in the (1,1,0,0)-cell");
    int vol = M.volume();
    if (vol % 2 != 0) raise(ErrCode::NotInADLV, "lattice not self-dual up to a factor");
    Lattice Md = lat_dual(M, fr.form());
    if (!lat_equal(Md, M.scaled_t(-vol / 2)))
        raise(ErrCode::NotInADLV, "lattice not self-dual up to a factor");
    StratumDescriptor desc;
    Lattice t0 = fr.tau0_lattice(M);
    if (lat_equal(t0, M)) {
        desc.is_point = true;
        const Probe* pr = probes.find(M);
        if (!pr) raise(ErrCode::AnchorNotFound, "rational lattice missing from the probe window");
        desc.anchor_label = pr->label;
        return desc;
    }
    desc.is_point = false;
    Lattice anchor = lat_sum(M, t0);
    if (!lat_equal(fr.tau0_lattice(anchor), anchor))
        raise(ErrCode::AnchorNotFound, "M + tau0 M is not tau0-stable");
    const Probe* pr = probes.find(anchor);
    if (!pr) raise(ErrCode::AnchorNotFound, "anchor lattice is not a window probe");
    desc.anchor_label = pr->label;
    return desc;
}

GSp4Survey gsp4_survey(int p, int e, int window, long long budget) {
    GSp4Survey rep;
    rep.p = p;
    rep.e = e;
    rep.window = window;
    // window valuations are tiny; a short series cap keeps the solves cheap
    auto F = FieldCtx::make(p, 1, 2 * e, 16);
    Frame fr = Frame::gsp4(F);
    Cochar mu{1, 1, 0, 0};
    ProbeSet probes = probe_set(fr, window, budget);

    // members: all Dieudonne lattices in the window over F_{q^{2e}} that lie
    // in the cell and are self-dual up to a factor
    std::vector<ChainOpSpec> ops;
    ops.push_back({[&fr](const std::vector<Series>& v) { return fr.apply_phi(v); }, 1});
    ops.push_back({[&fr](const std::vector<Series>& v) { return fr.apply_v_op(v); }, -1});
    auto lats = enumerate_window_lattices(fr, -2 * window, 2 * window, 0, ops, budget);
    std::vector<Lattice> members;
    for (auto& P : lats) {
        if (!P.full_rank()) continue;
        if (P.volume() % 2 != 0) continue;
        if (!lat_equal(lat_dual(P, fr.form()), P.scaled_t(-P.volume() / 2))) continue;
        if (!in_adlv(fr, P, mu)) continue;
        members.push_back(std::move(P));
    }
    rep.member_count = static_cast<int>(members.size());

    // group by descriptor and by profile
    std::map<std::string, std::vector<size_t>> by_desc, by_prof;
    std::vector<StratumDescriptor> descs;
    std::vector<std::string> profs;
    std::vector<WeylElt> eos;
    for (size_t i = 0; i < members.size(); ++i) {
        StratumDescriptor d = gsp4_classify(fr, members[i], probes);
        descs.push_back(d);
        std::string dk = (d.is_point ? "pt:" : "line:") + d.anchor_label;
        by_desc[dk].push_back(i);
        std::string pk = f_profile(fr, members[i], probes).to_string();
        profs.push_back(pk);
        by_prof[pk].push_back(i);
        eos.push_back(trunc_level1(fr, members[i], mu));
        if (d.is_point)
            ++rep.point_count;
        else
            ++rep.line_member_count;
    }
    // partitions coincide?
    auto partition_of = [&](const std::map<std::string, std::vector<size_t>>& g) {
        std::set<std::vector<size_t>> parts;
        for (const auto& [k, v] : g) parts.insert(v);
        return parts;
    };
    rep.groupings_coincide = partition_of(by_desc) == partition_of(by_prof);

    // EO constant on profile groups
    rep.eo_constant_on_groups = true;
    for (const auto& [k, v] : by_prof)
        for (size_t i : v) rep.eo_constant_on_groups &= eos[i] == eos[v[0]];

    // line groups: anchors and incidences
    std::map<std::string, const Lattice*> anchor_of_group;
    for (size_t i = 0; i < members.size(); ++i) {
        if (descs[i].is_point) continue;
        const Probe* pr = probes.find(lat_sum(members[i], fr.tau0_lattice(members[i])));
        anchor_of_group.emplace(descs[i].anchor_label, &pr->lattice);
    }
    rep.line_group_count = static_cast<int>(anchor_of_group.size());

    // the profile entry of line members at the rational points of their
    // anchor takes the minimal value (1, 0, 0, -1)
    rep.line_value_minimal = rep.line_group_count > 0;
    for (size_t i = 0; i < members.size(); ++i) {
        if (descs[i].is_point) continue;
        const Lattice& anchor = *anchor_of_group[descs[i].anchor_label];
        InvariantProfile prof = f_profile(fr, members[i], probes);
        for (const auto& pr : probes.probes) {
            // rational points inside the anchor with corank 1
            if (pr.lattice.volume() != anchor.volume() + 1) continue;
            if (!contains(anchor, pr.lattice)) continue;
            if (!lat_equal(fr.tau0_lattice(pr.lattice), pr.lattice)) continue;
            if (pr.lattice.volume() % 2 != 0) continue;
            if (!lat_equal(lat_dual(pr.lattice, fr.form()),
                           pr.lattice.scaled_t(-pr.lattice.volume() / 2)))
                continue;
            const Cochar* entry = prof.at(pr.label);
            rep.line_value_minimal &= entry && (*entry == Cochar{1, 0, 0, -1});
        }
    }

    // incidence counts
    rep.points_per_line = p * p + 1;
    rep.lines_per_point = p + 1;
    rep.points_per_line_ok = rep.line_group_count > 0;
    for (const auto& [lab, anchorp] : anchor_of_group) {
        int cnt = 0;
        for (size_t i = 0; i < members.size(); ++i) {
            if (!descs[i].is_point) continue;
            if (members[i].volume() == anchorp->volume() + 1 && contains(*anchorp, members[i]))
                ++cnt;
        }
        rep.points_per_line_ok &= cnt == rep.points_per_line;
    }
    // A point sees all of its lines exactly when the pencil of every
    // candidate anchor above it stays inside the window; the intersection
    // of an anchor pencil is Phi(anchor), so the criterion is
    // Phi(A) >= eps Lambda_0 for every probe A covering the point.
    rep.lines_per_point_ok = true;
    int fully_surveyed_pts = 0;
    Lattice epsL0 = fr.standard_lattice().scaled_t(1);
    for (size_t i = 0; i < members.size(); ++i) {
        if (!descs[i].is_point) continue;
        int cands = 0;
        bool pencils_inside = true;
        for (const auto& pr : probes.probes) {
            if (pr.lattice.volume() != members[i].volume() - 1) continue;
            if (!contains(pr.lattice, members[i])) continue;
            ++cands;
            pencils_inside &= contains(fr.phi_lattice(pr.lattice), epsL0);
        }
        // all p^2+1 rational covers visible, each with its pencil inside
        bool surveyed = pencils_inside && cands == p * p + 1;
        int cnt = 0;
        for (const auto& [lab, anchorp] : anchor_of_group) {
            if (members[i].volume() == anchorp->volume() + 1 && contains(*anchorp, members[i]))
                ++cnt;
        }
        if (surveyed) {
            ++fully_surveyed_pts;
            rep.lines_per_point_ok &= cnt == rep.lines_per_point;
        } else {
            rep.lines_per_point_ok &= cnt <= rep.lines_per_point;
        }
    }
    rep.lines_per_point_ok &= fully_surveyed_pts > 0;
    return rep;
}

}  // namespace latinv
