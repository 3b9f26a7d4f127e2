#pragma once

#include <map>
#include <string>
#include <vector>

#include "latinv/errors.hpp"

namespace latinv {

// Sparse multivariate polynomials over F_p with a fixed variable count.
// Canonical term order: lexicographic on exponent vectors.
class MPoly {
public:
    MPoly() = default;
    MPoly(int p, int nvars) : p_(p), nvars_(nvars) {}

    static MPoly constant(int p, int nvars, int c);
    static MPoly variable(int p, int nvars, int index);

    int p() const { return p_; }
    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly scale(int c) const;

    // substitute a constant for one variable
    MPoly substitute(int index, int value) const;

    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    const std::map<std::vector<uint8_t>, int>& terms() const { return terms_; }
    std::string to_string(const std::vector<std::string>& names) const;

private:
    void insert(const std::vector<uint8_t>& e, int c);

    int p_ = 2;
    int nvars_ = 0;
    std::map<std::vector<uint8_t>, int> terms_;
};

// determinant by Laplace expansion (small matrices)
MPoly mpoly_det(const std::vector<std::vector<MPoly>>& m);

// rank over F_p of the coefficient matrix of the given polynomials
int mpoly_span_rank(const std::vector<MPoly>& polys);

}  // namespace latinv
