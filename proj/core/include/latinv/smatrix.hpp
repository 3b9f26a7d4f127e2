#pragma once

#include <vector>

#include "latinv/series.hpp"

namespace latinv {

// Dense matrix of truncated Laurent series.
class SMat {
public:
    SMat() = default;
    SMat(const FieldCtx* ctx, int rows, int cols)
        : ctx_(ctx), rows_(rows), cols_(cols),
          a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), Series::zero(ctx)) {}

    static SMat identity(const FieldCtx* ctx, int n);
    // diag(t^{k_1}, ..., t^{k_n})
    static SMat diag_tpow(const FieldCtx* ctx, const std::vector<int>& k);

    const FieldCtx* ctx() const { return ctx_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Series& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Series& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::vector<Series> col(int j) const;
    void set_col(int j, const std::vector<Series>& v);

    SMat operator*(const SMat& o) const;
    SMat operator+(const SMat& o) const;
    SMat operator-(const SMat& o) const;
    SMat transpose() const;
    SMat sigma(long long k) const;   // coefficientwise Frobenius, entrywise
    SMat shift(int k) const;         // multiply every entry by t^k
    SMat cols_range(int j0, int j1) const;
    SMat hcat(const SMat& o) const;

    bool operator==(const SMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    // Solve A X = B for square A invertible over L (min-valuation pivoting).
    static SMat solve(const SMat& A, const SMat& B);
    static SMat inverse(const SMat& A);

    std::string to_string() const;

private:
    const FieldCtx* ctx_ = nullptr;
    int rows_ = 0, cols_ = 0;
    std::vector<Series> a_;
};

std::vector<Series> mat_apply(const SMat& A, const std::vector<Series>& v);

struct SnfResult {
    std::vector<int> mu;  // weakly decreasing elementary divisor exponents
    SMat U, V;            // A = U * diag(t^mu) * V, both invertible over O
};

// Smith normal form over F_{q^e}[[t]] (valuation-ring pivoting; pivot choice:
// minimal certified valuation, ties broken by (row, col) lexicographic order).
SnfResult smith_normal_form(const SMat& A);

}  // namespace latinv
