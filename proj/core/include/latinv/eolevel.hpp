#pragma once

#include <string>
#include <vector>

#include "latinv/isocrystal.hpp"

namespace latinv {

// Permutations of {0..h-1}; composition (u*v)(i) = u(v(i)).
struct WeylElt {
    std::vector<int> perm;

    static WeylElt identity(int h);
    int size() const { return static_cast<int>(perm.size()); }
    int operator()(int i) const { return perm[static_cast<size_t>(i)]; }
    WeylElt operator*(const WeylElt& o) const;
    WeylElt inverse() const;
    int length() const;  // inversion count
    bool operator==(const WeylElt& o) const { return perm == o.perm; }
    bool operator!=(const WeylElt& o) const { return !(*this == o); }
    bool operator<(const WeylElt& o) const { return perm < o.perm; }
};

// cycle notation, 1-based, cycles ordered and rotated to minimal elements
std::string cycle_string(const WeylElt& w);
WeylElt from_cycle_string(const std::string& s, int h);

// longest element i -> h-1-i
WeylElt longest_element(int h);

struct MuWeylData {
    Cochar mu;
    int h = 0;
    int m = 0;                   // multiplicity of 1 in mu
    WeylElt x_mu;                // w_0 w_{0,mu}
    std::vector<WeylElt> reps;   // minimal-length coset representatives ^mu W
};

// ^mu W for GL_h with minuscule mu (sigma acts trivially on W); also returns
// x_mu with tau_mu = x_mu eps^mu
MuWeylData mu_weyl_set(const Cochar& mu, int h);

// Residue space M/tM with the semilinear reductions of Phi and V.
struct ResidueModule {
    const FieldCtx* ctx = nullptr;
    int h = 0;
    // column j = image of basis vector j; Fbar is sigma-linear, Vbar is
    // sigma^{-1}-linear
    std::vector<std::vector<FFElem>> Fbar, Vbar;
};

ResidueModule residue_module(const Frame& fr, const Lattice& M);
// residue module of the affine element w tau_mu acting on the standard lattice
ResidueModule model_residue(const FieldCtx* ctx, const MuWeylData& data, const WeylElt& w);

// signature of the canonical filtration: ascending (dim D_i, dim Fbar(D_i))
using FiltSignature = std::vector<std::pair<int, int>>;
FiltSignature canonical_filtration_signature(const ResidueModule& D);

// the unique w in ^mu W whose model matches M's filtration signature
WeylElt trunc_level1(const Frame& fr, const Lattice& M, const Cochar& mu);

// minimal-length representative of W_{M_mu} w (x_mu W_{M_mu} x_mu^{-1})
WeylElt bruhat_invariant(const WeylElt& w, const Cochar& mu);

// Reporting dictionary: the invariant computed for the upper-triangular
// Borel, restated for the opposite (lower-triangular) convention by
// conjugation with the longest element.  Frozen: reports use w0 w w0 and the
// reversed cocharacter.
WeylElt opposite_borel(const WeylElt& w);
Cochar opposite_mu(const Cochar& mu);

}  // namespace latinv
