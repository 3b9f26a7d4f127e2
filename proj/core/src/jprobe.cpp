#include "latinv/jprobe.hpp"

#include <algorithm>
#include <map>

namespace latinv {

namespace {

unsigned long long fnv64(const std::string& s) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string probe_label(const Lattice& P) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "v%+d#%08llx", P.volume(),
                  static_cast<unsigned long long>(fnv64(P.canonical_key()) & 0xffffffffULL));
    return buf;
}

// ---- small F-linear algebra over coefficient rows (entries in a subfield S,
// closed under the operations since S is a subfield) ----

using Rows = std::vector<std::vector<FFElem>>;

Rows rref_rows(Rows rows, const FieldCtx* ctx) {
    size_t nr = rows.size(), nc = nr ? rows[0].size() : 0;
    size_t rr = 0;
    for (size_t c = 0; c < nc && rr < nr; ++c) {
        size_t piv = rr;
        while (piv < nr && rows[piv][c].is_zero()) ++piv;
        if (piv == nr) continue;
        std::swap(rows[rr], rows[piv]);
        FFElem inv = ctx->inv(rows[rr][c]);
        for (auto& x : rows[rr]) x = x * inv;
        for (size_t i = 0; i < nr; ++i) {
            if (i == rr || rows[i][c].is_zero()) continue;
            FFElem f = rows[i][c];
            for (size_t j = 0; j < nc; ++j) rows[i][j] = rows[i][j] - f * rows[rr][j];
        }
        ++rr;
    }
    rows.resize(rr);
    return rows;
}

std::string rows_key(const Rows& rows, const FieldCtx* ctx) {
    std::string s = std::to_string(rows.size()) + ":";
    for (const auto& r : rows)
        for (const auto& x : r) s += std::to_string(ctx->index(x)) + ",";
    return s;
}

// basis rows of {y : for every row u of rows, sum_j u_j y_j = 0}
Rows kernel_rows(const Rows& rows, int ncols, const FieldCtx* ctx) {
    Rows R = rref_rows(rows, ctx);
    std::vector<int> pivot_col;
    std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
    for (const auto& row : R)
        for (int j = 0; j < ncols; ++j)
            if (!row[static_cast<size_t>(j)].is_zero()) {
                pivot_col.push_back(j);
                is_pivot[static_cast<size_t>(j)] = true;
                break;
            }
    Rows out;
    for (int free = 0; free < ncols; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        std::vector<FFElem> y(static_cast<size_t>(ncols), ctx->zero());
        y[static_cast<size_t>(free)] = ctx->one();
        for (size_t r = 0; r < R.size(); ++r)
            y[static_cast<size_t>(pivot_col[r])] = -R[r][static_cast<size_t>(free)];
        out.push_back(std::move(y));
    }
    return out;
}

bool in_span(const Rows& rref, const std::vector<FFElem>& v, const FieldCtx* ctx) {
    std::vector<FFElem> w = v;
    for (const auto& row : rref) {
        int pc = -1;
        for (size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero()) {
                pc = static_cast<int>(j);
                break;
            }
        if (pc < 0) continue;
        FFElem f = w[static_cast<size_t>(pc)];
        if (f.is_zero()) continue;
        for (size_t j = 0; j < w.size(); ++j) w[j] = w[j] - f * row[j];
    }
    for (const auto& x : w)
        if (!x.is_zero()) return false;
    return true;
}

struct QuotientModel {
    const Frame* fr = nullptr;
    int lo = 0, hi = 0;
    int dim = 0;
    std::vector<std::pair<int, int>> basis;  // (component, chain index)

    std::vector<Series> lift(const std::vector<FFElem>& coeffs) const {
        auto v = fr->zero_vector();
        for (int k = 0; k < dim; ++k) {
            if (coeffs[static_cast<size_t>(k)].is_zero()) continue;
            auto e = fr->chain_vector(basis[static_cast<size_t>(k)].first,
                                      basis[static_cast<size_t>(k)].second);
            for (size_t i = 0; i < v.size(); ++i)
                v[i] = v[i] + Series::constant(coeffs[static_cast<size_t>(k)]) * e[i];
        }
        return v;
    }

    // expand the ambient vector in the window basis; entries outside the
    // window must sit below the lower lattice (chain index >= hi)
    std::vector<FFElem> project(const std::vector<Series>& v) const {
        const FieldCtx* F = fr->field();
        std::vector<FFElem> out(static_cast<size_t>(dim), F->zero());
        for (int c = 0; c < fr->num_components(); ++c) {
            int len = fr->chain_len(c);
            for (int pos = 0; pos < len; ++pos) {
                const Series& s = v[static_cast<size_t>(fr->coord(c, pos))];
                if (!s.known_nonzero()) continue;
                for (size_t ci = 0; ci < s.coeffs().size(); ++ci) {
                    if (s.coeffs()[ci].is_zero()) continue;
                    int idx = pos + len * (s.v_min() + static_cast<int>(ci));
                    if (idx >= hi) continue;
                    if (idx < lo) raise(ErrCode::BadSpec, "window projection underflow");
                    int k = 0;
                    for (; k < dim; ++k)
                        if (basis[static_cast<size_t>(k)] == std::make_pair(c, idx)) break;
                    out[static_cast<size_t>(k)] = out[static_cast<size_t>(k)] + s.coeffs()[ci];
                }
            }
        }
        return out;
    }
};

}  // namespace

std::vector<Lattice> enumerate_window_lattices(const Frame& fr, int lo_idx, int hi_idx,
                                               int rat_twist,
                                               const std::vector<ChainOpSpec>& ops,
                                               long long budget) {
    const FieldCtx* F = fr.field();
    QuotientModel Q;
    Q.fr = &fr;
    Q.lo = lo_idx;
    Q.hi = hi_idx;
    for (int c = 0; c < fr.num_components(); ++c)
        for (int idx = lo_idx; idx < hi_idx; ++idx) Q.basis.emplace_back(c, idx);
    Q.dim = static_cast<int>(Q.basis.size());

    // op matrices on the window quotient (entries are 0/1 shifts)
    struct QOp {
        Rows mat;  // column j = image of basis j, stored as rows for apply
        int twist;
    };
    std::vector<QOp> qops;
    for (const auto& spec : ops) {
        QOp q;
        q.twist = spec.twist;
        q.mat.assign(static_cast<size_t>(Q.dim),
                     std::vector<FFElem>(static_cast<size_t>(Q.dim), F->zero()));
        for (int j = 0; j < Q.dim; ++j) {
            std::vector<FFElem> unit(static_cast<size_t>(Q.dim), F->zero());
            unit[static_cast<size_t>(j)] = F->one();
            auto img = Q.project(spec.op(Q.lift(unit)));
            for (int i = 0; i < Q.dim; ++i) q.mat[static_cast<size_t>(i)][static_cast<size_t>(j)] = img[static_cast<size_t>(i)];
        }
        qops.push_back(std::move(q));
    }

    auto apply_qop = [&](const QOp& q, const std::vector<FFElem>& v) {
        std::vector<FFElem> tw(v.size());
        for (size_t i = 0; i < v.size(); ++i) tw[i] = F->frobenius(v[i], q.twist);
        std::vector<FFElem> out(v.size(), F->zero());
        for (size_t j = 0; j < v.size(); ++j) {
            if (tw[j].is_zero()) continue;
            for (size_t i = 0; i < v.size(); ++i)
                out[i] = out[i] + q.mat[i][j] * tw[j];
        }
        return out;
    };

    // preimage over S of the rref subspace U under a quotient operator
    auto preimage = [&](const QOp& q, const Rows& U) {
        // annihilator functionals of U
        Rows ann = kernel_rows(U, Q.dim, F);
        // rows of the condition system: each functional composed with mat
        Rows cond;
        for (const auto& a : ann) {
            std::vector<FFElem> row(static_cast<size_t>(Q.dim), F->zero());
            for (int j = 0; j < Q.dim; ++j) {
                FFElem acc = F->zero();
                for (int i = 0; i < Q.dim; ++i)
                    acc = acc + a[static_cast<size_t>(i)] * q.mat[static_cast<size_t>(i)][static_cast<size_t>(j)];
                row[static_cast<size_t>(j)] = acc;
            }
            cond.push_back(std::move(row));
        }
        Rows z = kernel_rows(cond, Q.dim, F);
        for (auto& r : z)
            for (auto& x : r) x = F->frobenius(x, -q.twist);
        return rref_rows(std::move(z), F);
    };

    auto intersect_rows = [&](const Rows& A, const Rows& B) {
        Rows ann = kernel_rows(A, Q.dim, F);
        Rows annB = kernel_rows(B, Q.dim, F);
        for (auto& r : annB) ann.push_back(std::move(r));
        return rref_rows(kernel_rows(ann, Q.dim, F), F);
    };

    // rational subfield elements
    std::vector<FFElem> subfield;
    for (unsigned long long i = 0; i < F->size(); ++i) {
        FFElem x = F->from_index(i);
        if (F->frobenius(x, rat_twist) == x) subfield.push_back(x);
    }

    std::map<std::string, Rows> all;
    Rows zero;
    all[rows_key(zero, F)] = zero;
    std::vector<Rows> frontier{zero};
    long long count = 0;
    while (!frontier.empty()) {
        std::vector<Rows> next;
        for (const auto& U : frontier) {
            // W = vectors whose images under every operator stay in U
            Rows W;
            {
                bool first = true;
                for (const auto& q : qops) {
                    Rows P = preimage(q, U);
                    W = first ? std::move(P) : intersect_rows(W, P);
                    first = false;
                }
                if (first) {
                    // no operators: the whole space
                    W.clear();
                    for (int i = 0; i < Q.dim; ++i) {
                        std::vector<FFElem> row(static_cast<size_t>(Q.dim), F->zero());
                        row[static_cast<size_t>(i)] = F->one();
                        W.push_back(std::move(row));
                    }
                }
            }
            // complement basis of U inside W
            Rows Urref = U;
            std::vector<std::vector<FFElem>> comp;
            for (const auto& w : W) {
                if (!in_span(Urref, w, F)) {
                    comp.push_back(w);
                    Urref.push_back(w);
                    Urref = rref_rows(std::move(Urref), F);
                }
            }
            if (comp.empty()) continue;
            // all nonzero S-combinations of the complement basis
            size_t ncomb = 1;
            for (size_t i = 0; i < comp.size(); ++i) ncomb *= subfield.size();
            for (size_t code = 1; code < ncomb; ++code) {
                if (++count > budget)
                    raise(ErrCode::WindowTooLarge, "window enumeration exceeded the budget");
                size_t c = code;
                std::vector<FFElem> v(static_cast<size_t>(Q.dim), F->zero());
                for (size_t i = 0; i < comp.size(); ++i) {
                    FFElem coef = subfield[c % subfield.size()];
                    c /= subfield.size();
                    if (coef.is_zero()) continue;
                    for (int j = 0; j < Q.dim; ++j)
                        v[static_cast<size_t>(j)] = v[static_cast<size_t>(j)] + coef * comp[i][static_cast<size_t>(j)];
                }
                Rows U2 = U;
                U2.push_back(v);
                U2 = rref_rows(std::move(U2), F);
                if (U2.size() != U.size() + 1) continue;
                std::string key = rows_key(U2, F);
                if (all.emplace(key, U2).second) next.push_back(U2);
            }
        }
        frontier = std::move(next);
    }

    // lift each subspace to a lattice: lower lattice + lifted basis vectors
    std::vector<Lattice> out;
    for (const auto& [key, U] : all) {
        SMat gens(F, fr.dim(), fr.dim() + static_cast<int>(U.size()));
        int col = 0;
        for (int c = 0; c < fr.num_components(); ++c) {
            int len = fr.chain_len(c);
            for (int k = 0; k < len; ++k)
                gens.set_col(col++, fr.chain_vector(c, hi_idx + k));
        }
        for (const auto& row : U) gens.set_col(col++, Q.lift(row));
        out.push_back(Lattice::from_cols(gens));
    }
    return out;
}

const Probe* ProbeSet::find(const Lattice& P) const {
    if (key_index_.size() != probes.size()) {
        key_index_.clear();
        for (size_t i = 0; i < probes.size(); ++i)
            key_index_.emplace(probes[i].lattice.canonical_key(), i);
    }
    auto it = key_index_.find(P.canonical_key());
    if (it != key_index_.end()) return &probes[it->second];
    // canonical keys identify lattices built from exact data; fall back to
    // the membership test for capped inputs
    for (const auto& pr : probes)
        if (pr.lattice.rank() == P.rank() && pr.lattice.volume() == P.volume() &&
            lat_equal(pr.lattice, P))
            return &pr;
    return nullptr;
}

namespace {

// j with j M_0 = P, built from tau0-fixed generators of P via tau1 words
SMat construct_j(const Frame& fr, const Lattice& P, const std::vector<std::vector<Series>>& gens) {
    const FieldCtx* F = fr.field();
    int l = fr.num_components();
    int h = fr.chain_len(0);
    Lattice L = fr.tau1_lattice(P);
    std::vector<std::vector<Series>> picked;
    for (const auto& g : gens) {
        if (static_cast<int>(picked.size()) == l) break;
        SMat ext(F, fr.dim(), L.rank() + 1);
        for (int j = 0; j < L.rank(); ++j) ext.set_col(j, L.basis().col(j));
        ext.set_col(L.rank(), g);
        Lattice L2 = Lattice::from_cols(ext);
        if (L2.volume() == L.volume() - 1) {
            picked.push_back(g);
            L = L2;
        }
    }
    if (static_cast<int>(picked.size()) != l)
        raise(ErrCode::BadSpec, "could not find a tau0-fixed basis modulo tau1");
    SMat jm(F, fr.dim(), fr.dim());
    for (int i = 0; i < l; ++i) {
        auto f = picked[static_cast<size_t>(i)];
        for (int jdx = 0; jdx < h; ++jdx) {
            jm.set_col(fr.coord(i, jdx), f);
            f = fr.apply_tau1(f);
        }
    }
    if (!lat_equal(Lattice::from_cols(jm), P))
        raise(ErrCode::BadSpec, "probe basis does not regenerate the lattice");
    // j must commute with Phi: check on the standard basis
    for (int c = 0; c < l; ++c)
        for (int jdx = 0; jdx < h; ++jdx) {
            auto lhs = fr.apply_phi(jm.col(fr.coord(c, jdx)));
            auto e = fr.chain_vector(c, jdx);
            auto rhs = mat_apply(jm, fr.apply_phi(e));
            if (!(lhs == rhs)) raise(ErrCode::BadSpec, "constructed j does not centralize Phi");
        }
    return jm;
}

void sort_probes(std::vector<Probe>& probes) {
    std::sort(probes.begin(), probes.end(), [](const Probe& a, const Probe& b) {
        int va = a.lattice.volume(), vb = b.lattice.volume();
        if (va != vb) return va < vb;
        return a.lattice.canonical_key() < b.lattice.canonical_key();
    });
}

}  // namespace

ProbeSet probe_set(const Frame& fr, int window, long long budget) {
    if (window < 0) raise(ErrCode::BadInput, "window must be nonnegative");
    ProbeSet ps;
    ps.window = window;
    const FieldCtx* F = fr.field();

    if (fr.kind() == FrameKind::SuperbasicRes) {
        Lattice L0 = fr.standard_lattice();
        for (int l = -window; l <= window; ++l) {
            Probe pr;
            pr.lattice = fr.pi_lattice(L0, l);
            pr.label = probe_label(pr.lattice);
            ps.probes.push_back(std::move(pr));
        }
        sort_probes(ps.probes);
        return ps;
    }

    if (fr.kind() == FrameKind::IsoclinicGL) {
        if (fr.slopes().size() != 1)
            raise(ErrCode::BadSpec, "probe enumeration needs an isoclinic frame");
        if (window == 0) {
            Probe pr;
            pr.lattice = fr.standard_lattice();
            pr.label = probe_label(pr.lattice);
            pr.j_mat = SMat::identity(F, fr.dim());
            ps.probes.push_back(std::move(pr));
            return ps;
        }
        std::vector<ChainOpSpec> ops;
        ops.push_back({[&fr](const std::vector<Series>& v) { return fr.apply_tau1(v); },
                       fr.tau1_twist()});
        // rebuild the rational generating data alongside each lattice
        // (enumerate, then reconstruct generators from the canonical basis:
        // the canonical basis columns of these lattices are tau0-fixed)
        auto lats = enumerate_window_lattices(fr, -window, window, fr.tau0_twist(), ops, budget);
        for (auto& P : lats) {
            Probe pr;
            std::vector<std::vector<Series>> gens;
            for (int j = 0; j < P.rank(); ++j) gens.push_back(P.basis().col(j));
            pr.j_mat = construct_j(fr, P, gens);
            pr.lattice = std::move(P);
            pr.label = probe_label(pr.lattice);
            ps.probes.push_back(std::move(pr));
        }
        sort_probes(ps.probes);
        return ps;
    }

    if (fr.kind() == FrameKind::GSp4) {
        std::vector<ChainOpSpec> ops;
        ops.push_back({[&fr](const std::vector<Series>& v) { return fr.apply_phi(v); }, 1});
        auto lats = enumerate_window_lattices(fr, -2 * window, 2 * window, 2, ops, budget);
        for (auto& P : lats) {
            if (!is_dieudonne(fr, P)) continue;
            Probe pr;
            pr.lattice = std::move(P);
            pr.label = probe_label(pr.lattice);
            ps.probes.push_back(std::move(pr));
        }
        sort_probes(ps.probes);
        return ps;
    }

    // unitary N_0: tau-stable lattices carrying a vertex chain of type (1; i)
    auto lats = enumerate_window_lattices(fr, -window, window, 2, {}, budget);
    int n = fr.unitary_n();
    for (auto& P : lats) {
        // type (1; i): eps^{i+1} P^dual subset^1 P subset^{n-1} eps^i P^dual
        Lattice Pd = lat_dual(P, fr.form());
        long long two_vol = 2LL * P.volume();
        if (two_vol % n != 0) continue;
        int i = static_cast<int>(two_vol / n);
        Lattice lo = Pd.scaled_t(i + 1);
        Lattice hi = Pd.scaled_t(i);
        if (!(contains(P, lo) && lo.volume() == P.volume() + 1)) continue;
        if (!(contains(hi, P) && P.volume() == hi.volume() + (n - 1))) continue;
        Probe pr;
        pr.lattice = std::move(P);
        pr.label = probe_label(pr.lattice);
        ps.probes.push_back(std::move(pr));
    }
    sort_probes(ps.probes);
    return ps;
}

const Cochar* InvariantProfile::at(const std::string& label) const {
    for (const auto& [lab, mu] : entries)
        if (lab == label) return &mu;
    return nullptr;
}

std::string InvariantProfile::to_string() const {
    std::string s;
    for (const auto& [lab, mu] : entries) {
        s += lab + ":(";
        for (size_t i = 0; i < mu.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(mu[i]);
        }
        s += ") ";
    }
    return s;
}

InvariantProfile f_profile(const Frame& fr, const Lattice& M, const ProbeSet& probes) {
    InvariantProfile prof;
    for (const auto& pr : probes.probes)
        prof.entries.emplace_back(pr.label, frame_inv(fr, pr.lattice, M));
    return prof;
}

bool same_stratum(const Frame& fr, const Lattice& M1, const Lattice& M2, const ProbeSet& probes) {
    return f_profile(fr, M1, probes) == f_profile(fr, M2, probes);
}

std::pair<Lattice, int> normalize_in_orbit(const Frame& fr, const Lattice& M, int window) {
    if (fr.kind() != FrameKind::SuperbasicRes && fr.kind() != FrameKind::IsoclinicGL)
        raise(ErrCode::BadSpec, "normalize_in_orbit needs a GL kind with pi");
    if (!M.full_rank())
        raise(ErrCode::NotFullRank,
              "orbit normalization is well-posed for full lattices only");
    const int ncomp = fr.num_components();
    Lattice L0 = fr.standard_lattice();
    auto chain_norm = [&](const Lattice& X) {
        // largest l with X inside pi^l Lambda_0 (containment is monotone in l)
        int vol = X.volume();
        int l = vol / ncomp + 1;
        for (int steps = 0; steps < 4 * (std::abs(vol) + fr.dim()) + 8; ++steps, --l) {
            if (contains(fr.pi_lattice(L0, l), X)) return l;
        }
        raise(ErrCode::NotFound, "no containing pi-translate found");
    };
    bool chain_ordered =
        fr.kind() == FrameKind::SuperbasicRes || (fr.kind() == FrameKind::IsoclinicGL && ncomp == 1);
    if (chain_ordered) {
        int l = chain_norm(M);
        return {fr.pi_lattice(M, -l), l};
    }

    ProbeSet probes = probe_set(fr, window);
    Lattice cur = M;
    int c0 = chain_norm(cur);
    cur = fr.pi_lattice(cur, -c0);
    int start_vol = cur.volume();
    (void)start_vol;
    for (int iter = 0; iter < 16; ++iter) {
        // minimal probe-type lattice containing cur (unique by theory)
        std::vector<const Probe*> containing;
        for (const auto& pr : probes.probes)
            if (pr.lattice.full_rank() && contains(pr.lattice, cur)) containing.push_back(&pr);
        if (containing.empty())
            raise(ErrCode::NotFound, "no containing probe lattice in the window");
        const Probe* minimal = containing[0];
        for (const Probe* pr : containing)
            if (contains(minimal->lattice, pr->lattice)) minimal = pr;
        for (const Probe* pr : containing)
            if (!contains(pr->lattice, minimal->lattice))
                raise(ErrCode::NotFound, "containing probes have no unique minimum in the window");
        if (minimal->lattice.volume() == 0) {
            // minimal containing translate is Lambda_0 itself: normalized
            int shift = (M.volume() - cur.volume()) / ncomp;
            return {cur, shift};
        }
        if (!minimal->j_mat) raise(ErrCode::NotFound, "probe carries no realizing matrix");
        cur = Lattice::from_cols(SMat::solve(*minimal->j_mat, cur.basis()));
    }
    raise(ErrCode::NonTerminating, "orbit normalization did not stabilize");
}

}  // namespace latinv
