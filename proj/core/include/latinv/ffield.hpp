#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "latinv/errors.hpp"

namespace latinv {

// Arithmetic in F_{q^e}, q = p^r, realized as F_p[x]/(f) with f the canonical
// defining polynomial of degree n = r*e: the lexicographically least monic
// irreducible polynomial over F_p, coefficient tuples ordered constant term
// first.  Elements are F_p coefficient vectors in the power basis of f, which
// doubles as their serialization (base-p digits, little-endian).
class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

inline constexpr int kMaxFieldDeg = 16;

struct FFElem {
    const FieldCtx* ctx = nullptr;
    std::array<uint8_t, kMaxFieldDeg> c{};

    bool operator==(const FFElem& o) const;
    bool operator!=(const FFElem& o) const { return !(*this == o); }

    FFElem operator+(const FFElem& o) const;
    FFElem operator-(const FFElem& o) const;
    FFElem operator-() const;
    FFElem operator*(const FFElem& o) const;

    bool is_zero() const;
    bool is_one() const;
};

class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
public:
    // q = p^r; the coefficient field is F_{q^e}.  work_prec is the global
    // t-adic working precision used by truncated series over this field.
    static FieldCtxPtr make(int p, int r, int e, int work_prec = 64);

    int p() const { return p_; }
    int r() const { return r_; }
    int e() const { return e_; }
    int deg() const { return n_; }          // n = r*e, degree over F_p
    int work_prec() const { return work_prec_; }
    unsigned long long q() const { return q_; }
    // p^n; throws BadSpec if it does not fit in 64 bits.
    unsigned long long size() const;

    const std::vector<uint8_t>& defining_poly() const { return poly_; }

    FFElem zero() const;
    FFElem one() const;
    FFElem gen() const;                      // class of x, degree n over F_p
    FFElem from_digits(const std::vector<uint8_t>& digits) const;
    std::vector<uint8_t> digits(const FFElem& x) const;
    FFElem from_index(unsigned long long idx) const;   // base-p digits of idx
    unsigned long long index(const FFElem& x) const;

    FFElem inv(const FFElem& x) const;       // ZeroInput on 0
    FFElem pow(const FFElem& x, long long k) const;

    // x -> x^{p^k}, k >= 0 (the absolute Frobenius iterated)
    FFElem frobenius_p(const FFElem& x, int k) const;
    // x -> x^{q^k}, any integer k (negative = inverse automorphism)
    FFElem frobenius(const FFElem& x, long long k) const;
    // least d >= 1 with x^{p^d} = x, i.e. [F_p(x):F_p]; ZeroInput on 0
    int element_degree(const FFElem& x) const;

    // Embedding of a subfield context (deg | this->deg) that sends the
    // subfield generator to the lex-least root of its defining polynomial.
    FFElem embed(const FieldCtx& sub, const FFElem& x) const;

    std::string to_string(const FFElem& x) const;

private:
    FieldCtx() = default;
    void build_tables();
    FFElem reduce_product(const std::array<uint8_t, 2 * kMaxFieldDeg>& prod) const;
    std::vector<uint8_t> find_defining_poly() const;
    bool poly_irreducible(const std::vector<uint8_t>& f) const;

    int p_ = 0, r_ = 0, e_ = 0, n_ = 0;
    int work_prec_ = 64;
    unsigned long long q_ = 0;
    std::vector<uint8_t> poly_;                         // monic, length n+1
    // x^{n+k} mod f for k = 0..n-2
    std::vector<std::array<uint8_t, kMaxFieldDeg>> red_;
    // p-power map as an F_p-linear map in the power basis (column j = (x^j)^p)
    std::vector<std::array<uint8_t, kMaxFieldDeg>> pmat_;
    // sigma^j = (p-power)^(r*j) for j = 0..e-1
    std::vector<std::vector<std::array<uint8_t, kMaxFieldDeg>>> sigma_;
    mutable std::vector<std::pair<const FieldCtx*, FFElem>> embed_cache_;

    friend struct FFElem;
};

}  // namespace latinv
