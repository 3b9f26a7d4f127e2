#include "latinv/smatrix.hpp"

#include <algorithm>
#include <numeric>

namespace latinv {

SMat SMat::identity(const FieldCtx* ctx, int n) {
    SMat m(ctx, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Series::one(ctx);
    return m;
}

SMat SMat::diag_tpow(const FieldCtx* ctx, const std::vector<int>& k) {
    SMat m(ctx, static_cast<int>(k.size()), static_cast<int>(k.size()));
    for (size_t i = 0; i < k.size(); ++i)
        m.at(static_cast<int>(i), static_cast<int>(i)) = Series::t_pow(ctx, k[i]);
    return m;
}

std::vector<Series> SMat::col(int j) const {
    std::vector<Series> v;
    v.reserve(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
}

void SMat::set_col(int j, const std::vector<Series>& v) {
    for (int i = 0; i < rows_; ++i) at(i, j) = v[static_cast<size_t>(i)];
}

SMat SMat::operator*(const SMat& o) const {
    SMat out(ctx_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Series& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Series& bkj = o.at(k, j);
                if (bkj.is_zero()) continue;
                out.at(i, j) = out.at(i, j) + aik * bkj;
            }
        }
    return out;
}

SMat SMat::operator+(const SMat& o) const {
    SMat out = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = out.at(i, j) + o.at(i, j);
    return out;
}

SMat SMat::operator-(const SMat& o) const {
    SMat out = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = out.at(i, j) - o.at(i, j);
    return out;
}

SMat SMat::transpose() const {
    SMat out(ctx_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

SMat SMat::sigma(long long k) const {
    SMat out = *this;
    for (auto& s : out.a_) s = s.sigma(k);
    return out;
}

SMat SMat::shift(int k) const {
    SMat out = *this;
    for (auto& s : out.a_) s = s.shift(k);
    return out;
}

SMat SMat::cols_range(int j0, int j1) const {
    SMat out(ctx_, rows_, j1 - j0);
    for (int i = 0; i < rows_; ++i)
        for (int j = j0; j < j1; ++j) out.at(i, j - j0) = at(i, j);
    return out;
}

SMat SMat::hcat(const SMat& o) const {
    SMat out(ctx_, rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) out.at(i, cols_ + j) = o.at(i, j);
    }
    return out;
}

std::vector<Series> mat_apply(const SMat& A, const std::vector<Series>& v) {
    std::vector<Series> out(static_cast<size_t>(A.rows()), Series::zero(A.ctx()));
    for (int j = 0; j < A.cols(); ++j) {
        if (v[static_cast<size_t>(j)].is_zero()) continue;
        for (int i = 0; i < A.rows(); ++i) {
            const Series& aij = A.at(i, j);
            if (aij.is_zero()) continue;
            out[static_cast<size_t>(i)] = out[static_cast<size_t>(i)] + aij * v[static_cast<size_t>(j)];
        }
    }
    return out;
}

namespace {

// Pivot search over W[k.., k..]: minimal certified valuation, (row, col) lex
// tie-break.  A capped-zero entry whose precision cannot rule out a smaller
// valuation than the best candidate aborts with PrecisionExceeded.
struct Pivot {
    int row, col, val;
};

Pivot find_pivot(const SMat& W, int k) {
    int best_i = -1, best_j = -1, best_v = 0;
    bool have = false;
    int min_cap = Series::kExact;
    for (int i = k; i < W.rows(); ++i)
        for (int j = k; j < W.cols(); ++j) {
            const Series& s = W.at(i, j);
            if (s.known_nonzero()) {
                int v = s.val_nonzero();
                if (!have || v < best_v) {
                    have = true;
                    best_v = v;
                    best_i = i;
                    best_j = j;
                }
            } else if (!s.is_zero()) {
                min_cap = std::min(min_cap, s.prec());
            }
        }
    if (!have) {
        if (min_cap < Series::kExact)
            raise(ErrCode::PrecisionExceeded, "no pivot certified in submatrix");
        raise(ErrCode::SingularMatrix, "matrix is singular over L");
    }
    if (min_cap <= best_v)
        raise(ErrCode::PrecisionExceeded, "capped entry may undercut pivot valuation");
    return {best_i, best_j, best_v};
}

}  // namespace

SnfResult smith_normal_form(const SMat& A) {
    if (A.rows() != A.cols()) raise(ErrCode::BadInput, "smith_normal_form needs a square matrix");
    const FieldCtx* ctx = A.ctx();
    int n = A.rows();
    SMat W = A;
    SMat U = SMat::identity(ctx, n);
    SMat V = SMat::identity(ctx, n);

    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < n; ++j) std::swap(W.at(a, j), W.at(b, j));
        for (int i = 0; i < n; ++i) std::swap(U.at(i, a), U.at(i, b));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < n; ++i) std::swap(W.at(i, a), W.at(i, b));
        for (int j = 0; j < n; ++j) std::swap(V.at(a, j), V.at(b, j));
    };
    // W_row_i -= c * W_row_k;  U_col_k += c * U_col_i
    auto row_sub = [&](int i, int k, const Series& c) {
        for (int j = 0; j < n; ++j) W.at(i, j) = W.at(i, j) - c * W.at(k, j);
        for (int a = 0; a < n; ++a) U.at(a, k) = U.at(a, k) + c * U.at(a, i);
    };
    // W_col_j -= c * W_col_k;  V_row_k += c * V_row_j
    auto col_sub = [&](int j, int k, const Series& c) {
        for (int i = 0; i < n; ++i) W.at(i, j) = W.at(i, j) - c * W.at(i, k);
        for (int b = 0; b < n; ++b) V.at(k, b) = V.at(k, b) + c * V.at(j, b);
    };

    for (int k = 0; k < n; ++k) {
        Pivot p = find_pivot(W, k);
        swap_rows(k, p.row);
        swap_cols(k, p.col);
        const Series pivot = W.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            const Series& e = W.at(i, k);
            if (e.is_zero()) continue;
            row_sub(i, k, e / pivot);
        }
        for (int j = k + 1; j < n; ++j) {
            const Series& e = W.at(k, j);
            if (e.is_zero()) continue;
            col_sub(j, k, e / pivot);
        }
    }

    SnfResult res;
    res.mu.resize(static_cast<size_t>(n));
    // peel units into V: W = diag(t^mu) * diag(u); fold diag(u) into V rows
    for (int k = 0; k < n; ++k) {
        int v = W.at(k, k).val_nonzero();
        res.mu[static_cast<size_t>(k)] = v;
        Series unit = W.at(k, k).shift(-v);
        for (int b = 0; b < n; ++b) V.at(k, b) = unit * V.at(k, b);
    }
    // sort exponents weakly decreasing; fold the permutation into U and V
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return res.mu[static_cast<size_t>(a)] > res.mu[static_cast<size_t>(b)]; });
    SMat U2(ctx, n, n), V2(ctx, n, n);
    std::vector<int> mu2(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        mu2[static_cast<size_t>(k)] = res.mu[static_cast<size_t>(perm[static_cast<size_t>(k)])];
        for (int i = 0; i < n; ++i) U2.at(i, k) = U.at(i, perm[static_cast<size_t>(k)]);
        for (int j = 0; j < n; ++j) V2.at(k, j) = V.at(perm[static_cast<size_t>(k)], j);
    }
    res.mu = std::move(mu2);
    res.U = std::move(U2);
    res.V = std::move(V2);
    return res;
}

SMat SMat::solve(const SMat& A, const SMat& B) {
    if (A.rows() != A.cols() || A.rows() != B.rows())
        raise(ErrCode::BadInput, "solve shape mismatch");
    const FieldCtx* ctx = A.ctx();
    int n = A.rows(), m = B.cols();
    SMat W = A, R = B;
    std::vector<int> colperm(static_cast<size_t>(n));
    std::iota(colperm.begin(), colperm.end(), 0);
    for (int k = 0; k < n; ++k) {
        Pivot p = find_pivot(W, k);
        if (p.row != k) {
            for (int j = 0; j < n; ++j) std::swap(W.at(k, j), W.at(p.row, j));
            for (int j = 0; j < m; ++j) std::swap(R.at(k, j), R.at(p.row, j));
        }
        if (p.col != k) {
            for (int i = 0; i < n; ++i) std::swap(W.at(i, k), W.at(i, p.col));
            std::swap(colperm[static_cast<size_t>(k)], colperm[static_cast<size_t>(p.col)]);
        }
        const Series pivot = W.at(k, k);
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const Series& e = W.at(i, k);
            if (e.is_zero()) continue;
            Series c = e / pivot;
            for (int j = k; j < n; ++j) W.at(i, j) = W.at(i, j) - c * W.at(k, j);
            for (int j = 0; j < m; ++j) R.at(i, j) = R.at(i, j) - c * R.at(k, j);
        }
    }
    SMat X(ctx, n, m);
    for (int k = 0; k < n; ++k) {
        Series inv = W.at(k, k).inverse();
        for (int j = 0; j < m; ++j)
            X.at(colperm[static_cast<size_t>(k)], j) = inv * R.at(k, j);
    }
    return X;
}

SMat SMat::inverse(const SMat& A) { return solve(A, SMat::identity(A.ctx(), A.rows())); }

std::string SMat::to_string() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
        s += "[ ";
        for (int j = 0; j < cols_; ++j) {
            s += at(i, j).to_string();
            if (j + 1 < cols_) s += " | ";
        }
        s += " ]\n";
    }
    return s;
}

}  // namespace latinv
