#include "latinv/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace latinv {

bool weakly_decreasing(const Cochar& mu) {
    for (size_t i = 1; i < mu.size(); ++i)
        if (mu[i - 1] < mu[i]) return false;
    return true;
}

bool dominance_leq(const Cochar& lo, const Cochar& hi) {
    if (lo.size() != hi.size()) return false;
    long long sl = 0, sh = 0, pl = 0, ph = 0;
    for (size_t i = 0; i < lo.size(); ++i) {
        sl += lo[i];
        sh += hi[i];
    }
    if (sl != sh) return false;
    for (size_t i = 0; i < lo.size(); ++i) {
        pl += lo[i];
        ph += hi[i];
        if (pl > ph) return false;
    }
    return true;
}

Cochar negate_reverse(const Cochar& mu) {
    Cochar out(mu.rbegin(), mu.rend());
    for (auto& v : out) v = -v;
    return out;
}

namespace {

// Split a series into the part with exponents >= cut and the rest.
Series upper_part(const Series& s, int cut) {
    if (!s.known_nonzero()) return s;
    std::vector<FFElem> hi;
    int v = s.v_min();
    for (size_t i = 0; i < s.coeffs().size(); ++i) {
        int k = v + static_cast<int>(i);
        if (k >= cut) hi.push_back(s.coeffs()[i]);
    }
    Series out = Series::from_coeffs(s.ctx(), std::max(v, cut), std::move(hi));
    if (!s.is_exact()) out = out.truncated(s.prec());
    return out;
}

struct ReduceResult {
    std::vector<std::vector<Series>> cols;  // reordered by pivot row
    std::vector<int> pivot_rows;
    std::vector<int> pivot_vals;
};

void axpy(std::vector<Series>& dst, const Series& c, const std::vector<Series>& src) {
    for (size_t i = 0; i < dst.size(); ++i) dst[i] = dst[i] - c * src[i];
}

// Column reduction to canonical Hermite form over the valuation ring.
ReduceResult hermite_reduce(const SMat& gens) {
    const FieldCtx* ctx = gens.ctx();
    int n = gens.rows();
    std::vector<std::vector<Series>> active;
    for (int j = 0; j < gens.cols(); ++j) active.push_back(gens.col(j));

    ReduceResult res;
    for (int r = 0; r < n; ++r) {
        int best = -1, best_val = 0;
        int min_cap = Series::kExact;
        for (size_t c = 0; c < active.size(); ++c) {
            const Series& e = active[c][static_cast<size_t>(r)];
            if (e.known_nonzero()) {
                int v = e.val_nonzero();
                if (best < 0 || v < best_val) {
                    best = static_cast<int>(c);
                    best_val = v;
                }
            } else if (!e.is_zero()) {
                min_cap = std::min(min_cap, e.prec());
            }
        }
        if (best < 0) {
            // only capped zeros here: accept vanishing within the margin
            if (min_cap < Series::kExact && min_cap < ctx->work_prec() / 2)
                raise(ErrCode::PrecisionExceeded,
                      "cannot certify pivot absence in row " + std::to_string(r));
            continue;
        }
        if (min_cap <= best_val)
            raise(ErrCode::PrecisionExceeded,
                  "capped entry may undercut pivot in row " + std::to_string(r));
        std::vector<Series> piv = std::move(active[static_cast<size_t>(best)]);
        active.erase(active.begin() + best);
        // scale so the pivot entry is the exact monomial t^{best_val}
        Series unit = piv[static_cast<size_t>(r)].shift(-best_val);
        Series unit_inv = unit.inverse();
        for (auto& e : piv) e = e * unit_inv;
        piv[static_cast<size_t>(r)] = Series::t_pow(ctx, best_val);
        for (auto& col : active) {
            Series e = col[static_cast<size_t>(r)];
            if (e.is_zero()) continue;
            Series q = e.shift(-best_val);
            axpy(col, q, piv);  // zeroes row r exactly: piv[r] is the monomial t^v
        }
        res.cols.push_back(std::move(piv));
        res.pivot_rows.push_back(r);
        res.pivot_vals.push_back(best_val);
    }
    // leftover columns must be certified (near-)zero: dependent generators
    for (const auto& col : active) {
        for (const auto& e : col) {
            if (e.known_nonzero())
                raise(ErrCode::BadInput, "dependent-column reduction left a nonzero entry");
            if (!e.is_zero() && e.prec() < ctx->work_prec() / 2)
                raise(ErrCode::PrecisionExceeded, "cannot certify column dependence");
        }
    }
    // canonical pass: in every pivot row, reduce the other columns below the
    // pivot valuation; ascending order lets the reductions cascade cleanly
    for (size_t a = 0; a < res.cols.size(); ++a) {
        for (size_t b = a + 1; b < res.cols.size(); ++b) {
            int r = res.pivot_rows[b];
            int v = res.pivot_vals[b];
            const Series& e = res.cols[a][static_cast<size_t>(r)];
            if (e.is_zero()) continue;
            Series hi = upper_part(e, v);
            if (!hi.known_nonzero()) continue;
            Series q = hi.shift(-v);
            axpy(res.cols[a], q, res.cols[b]);
        }
    }
    return res;
}

}  // namespace

Lattice Lattice::from_cols(const SMat& gens) {
    ReduceResult red = hermite_reduce(gens);
    Lattice M;
    M.basis_ = SMat(gens.ctx(), gens.rows(), static_cast<int>(red.cols.size()));
    for (size_t j = 0; j < red.cols.size(); ++j)
        M.basis_.set_col(static_cast<int>(j), red.cols[j]);
    M.pivot_rows_ = std::move(red.pivot_rows);
    M.pivot_vals_ = std::move(red.pivot_vals);
    return M;
}

Lattice Lattice::standard(const FieldCtx* ctx, int n) {
    return from_cols(SMat::identity(ctx, n));
}

int Lattice::volume() const {
    if (!full_rank()) raise(ErrCode::NotFullRank, "volume needs a full-rank lattice");
    return std::accumulate(pivot_vals_.begin(), pivot_vals_.end(), 0);
}

Lattice Lattice::scaled_t(int k) const { return from_cols(basis_.shift(k)); }

std::string Lattice::canonical_key() const {
    std::string s = "r" + std::to_string(rank()) + ";";
    for (int j = 0; j < rank(); ++j) {
        s += "p" + std::to_string(pivot_rows_[static_cast<size_t>(j)]) + "v" +
             std::to_string(pivot_vals_[static_cast<size_t>(j)]) + ":";
        for (int i = 0; i < dim(); ++i) {
            const Series& e = basis_.at(i, j);
            if (!e.known_nonzero()) continue;
            s += std::to_string(i) + "@" + std::to_string(e.v_min()) + "(";
            for (const auto& c : e.coeffs()) s += std::to_string(e.ctx()->index(c)) + ",";
            s += ")";
        }
        s += ";";
    }
    return s;
}

bool member(const std::vector<Series>& v, const Lattice& M) {
    std::vector<Series> w = v;
    const FieldCtx* ctx = M.ctx();
    for (int j = 0; j < M.rank(); ++j) {
        int r = M.pivot_rows()[static_cast<size_t>(j)];
        int pv = M.pivot_vals()[static_cast<size_t>(j)];
        const Series& e = w[static_cast<size_t>(r)];
        if (e.is_zero()) continue;
        if (e.known_nonzero()) {
            if (e.val_nonzero() < pv) return false;
        } else if (e.prec() < pv) {
            raise(ErrCode::PrecisionExceeded, "membership undecidable at pivot row " +
                                                  std::to_string(r));
        }
        Series q = e.shift(-pv);
        for (int i = 0; i < M.dim(); ++i)
            w[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] - q * M.basis().at(i, j);
    }
    for (const auto& e : w) {
        if (e.known_nonzero()) return false;
        if (!e.is_zero() && e.prec() < ctx->work_prec() / 2)
            raise(ErrCode::PrecisionExceeded, "membership residual not certified zero");
    }
    return true;
}

bool contains(const Lattice& outer, const Lattice& inner) {
    for (int j = 0; j < inner.rank(); ++j)
        if (!member(inner.basis().col(j), outer)) return false;
    return true;
}

bool lat_equal(const Lattice& a, const Lattice& b) {
    if (a.rank() != b.rank() || a.dim() != b.dim()) return false;
    return contains(a, b) && contains(b, a);
}

Lattice lat_sum(const Lattice& a, const Lattice& b) {
    return Lattice::from_cols(a.basis().hcat(b.basis()));
}

Form standard_form(const FieldCtx* ctx, int n) {
    Form f;
    f.gram = SMat::identity(ctx, n);
    f.twist = 0;
    f.kind = FormKind::None;
    return f;
}

Lattice lat_dual(const Lattice& M, const Form& f) {
    if (!M.full_rank()) raise(ErrCode::NotFullRank, "dual needs a full-rank lattice");
    // condition x^T G sigma^k(B) integral  <=>  x in ((G sigma^k(B))^T)^{-1} O^n
    SMat C = f.gram * M.basis().sigma(f.twist);
    return Lattice::from_cols(SMat::inverse(C.transpose()));
}

Lattice lat_intersect(const Lattice& a, const Lattice& b) {
    Form f = standard_form(a.ctx(), a.dim());
    return lat_dual(lat_sum(lat_dual(a, f), lat_dual(b, f)), f);
}

Cochar relative_position(const Lattice& M1, const Lattice& M2) {
    if (M1.dim() != M2.dim() || M1.rank() != M2.rank() || !M1.full_rank())
        raise(ErrCode::BadInput, "relative_position needs equal full-rank lattices");
    SMat X = SMat::solve(M1.basis(), M2.basis());
    return smith_normal_form(X).mu;
}

}  // namespace latinv
