#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latinv/smatrix.hpp"

namespace latinv {

// Dominant cocharacter data: weakly decreasing integer vector.
using Cochar = std::vector<int>;

bool weakly_decreasing(const Cochar& mu);
// mu' <= mu in dominance order (equal entry sums, partial sums dominated)
bool dominance_leq(const Cochar& lo, const Cochar& hi);
// inv(M2, M1) = -reverse(inv(M1, M2))
Cochar negate_reverse(const Cochar& mu);

enum class FormKind { None, Alternating, Hermitian };

// Sesquilinear pairing f(x, y) = x^T gram sigma^twist(y).
struct Form {
    SMat gram;
    int twist = 0;
    FormKind kind = FormKind::None;
};

// O_L-lattice in L^n spanned by the columns of a basis matrix; stored in
// canonical column Hermite form (pivot entries are exact monomials t^v,
// entries of other columns in a pivot row are reduced below t^v).  Rank may
// be smaller than the ambient dimension for lattices in a subspace.
class Lattice {
public:
    Lattice() = default;

    // Reduce a spanning set of columns; dependent columns are discarded.
    static Lattice from_cols(const SMat& gens);
    static Lattice standard(const FieldCtx* ctx, int n);

    const FieldCtx* ctx() const { return basis_.ctx(); }
    int dim() const { return basis_.rows(); }
    int rank() const { return basis_.cols(); }
    bool full_rank() const { return rank() == dim(); }
    const SMat& basis() const { return basis_; }
    const std::vector<int>& pivot_rows() const { return pivot_rows_; }
    const std::vector<int>& pivot_vals() const { return pivot_vals_; }

    // valuation of det(basis); sum of pivot valuations
    int volume() const;

    Lattice scaled_t(int k) const;  // t^k * M

    std::string canonical_key() const;  // deterministic serialization string

private:
    SMat basis_;
    std::vector<int> pivot_rows_;
    std::vector<int> pivot_vals_;
};

// v in M?  Solves basis * x = v and certifies integrality of x.
bool member(const std::vector<Series>& v, const Lattice& M);
// every column of inner lies in outer
bool contains(const Lattice& outer, const Lattice& inner);
bool lat_equal(const Lattice& a, const Lattice& b);

Lattice lat_sum(const Lattice& a, const Lattice& b);
Lattice lat_intersect(const Lattice& a, const Lattice& b);
// {x : f(x, M) subseteq O_L}
Lattice lat_dual(const Lattice& M, const Form& f);
Form standard_form(const FieldCtx* ctx, int n);

// Cartan invariant: mu with basis(M1)^{-1} basis(M2) in K t^mu K.
Cochar relative_position(const Lattice& M1, const Lattice& M2);

}  // namespace latinv
