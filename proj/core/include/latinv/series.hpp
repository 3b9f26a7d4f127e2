#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latinv/ffield.hpp"

namespace latinv {

// Truncated Laurent series over F_{q^e}: elements of L = F_{q^e}((t)) up to a
// tracked t-adic precision.  A series with finite support constructed from
// exact data is flagged exact and never loses precision under + and *;
// division (and any inverse) produces a result capped at the field context's
// working precision.  Nonzero series are kept normalized: the stored window
// starts at the valuation.
class Series {
public:
    // prec sentinel: coefficients known at every exponent
    static constexpr int kExact = INT32_MAX / 2;

    Series() = default;

    static Series zero(const FieldCtx* ctx);                  // exact 0
    static Series zero_capped(const FieldCtx* ctx, int prec); // 0 + O(t^prec)
    static Series monomial(const FieldCtx* ctx, const FFElem& a, int k);
    static Series constant(const FFElem& a);                  // lift [a] at t^0
    static Series one(const FieldCtx* ctx);
    static Series t(const FieldCtx* ctx);
    static Series t_pow(const FieldCtx* ctx, int k);
    // coefficients for exponents lo..lo+len-1 (exact)
    static Series from_coeffs(const FieldCtx* ctx, int lo, std::vector<FFElem> coeffs);

    const FieldCtx* ctx() const { return ctx_; }
    bool is_exact() const { return prec_ == kExact; }
    int prec() const { return prec_; }

    // true iff the series is exactly zero
    bool is_zero() const { return coeffs_.empty() && is_exact(); }
    // true iff some stored coefficient is nonzero (certified valuation)
    bool known_nonzero() const { return !coeffs_.empty(); }

    // valuation: the stored window head for a certified-nonzero series,
    // nullopt (= +infinity) for exact zero.  PrecisionExceeded when every
    // known coefficient vanishes but the tail is unknown.
    std::optional<int> val() const;
    // valuation of a series required to be nonzero
    int val_nonzero() const;
    // best certified lower bound for the valuation
    int val_lower_bound() const;

    FFElem coeff(int k) const;  // PrecisionExceeded beyond known range

    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator-() const;
    Series operator*(const Series& o) const;
    Series scale(const FFElem& a) const;
    Series shift(int k) const;  // multiply by t^k
    Series inverse() const;     // ZeroInput / SingularSeries on zero input
    Series operator/(const Series& o) const { return *this * o.inverse(); }

    // coefficientwise Frobenius x -> x^{q^k}; fixes t
    Series sigma(long long k) const;

    Series truncated(int prec) const;

    bool operator==(const Series& o) const;
    bool operator!=(const Series& o) const { return !(*this == o); }

    // deterministic total order on stored representations (serialization)
    static int cmp(const Series& a, const Series& b);

    std::string to_string() const;

    int v_min() const { return v_min_; }
    const std::vector<FFElem>& coeffs() const { return coeffs_; }

private:
    void normalize();

    const FieldCtx* ctx_ = nullptr;
    int v_min_ = 0;
    std::vector<FFElem> coeffs_;
    int prec_ = kExact;
};

}  // namespace latinv
