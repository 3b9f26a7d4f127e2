#pragma once

#include <map>

#include "latinv/isocrystal.hpp"

namespace latinv {

// A probe: a J-translate of a standard lattice, with its canonical label and
// (for isoclinic frames) an explicit matrix j realizing it as j M_0.
struct Probe {
    std::string label;
    Lattice lattice;
    std::optional<SMat> j_mat;
};

struct ProbeSet {
    int window = 0;
    std::vector<Probe> probes;

    const Probe* find(const Lattice& P) const;

private:
    mutable std::map<std::string, size_t> key_index_;
};

// Finite probe sets per frame kind:
//  superbasic-res:  { pi^l Lambda_0 : |l| <= window }
//  isoclinic (one summand):  all tau0- and tau1-stable lattices between
//      pi^{-w} Lambda_0 and pi^{w} Lambda_0, via enumeration of rational
//      tau1-stable subspaces of the window quotient
//  gsp4:  all tau0-stable Dieudonne lattices between eps^{-w} and eps^w
//  unitary-n0:  tau-stable lattices in the eps-window carrying a vertex
//      chain of type (1; i)
ProbeSet probe_set(const Frame& fr, int window, long long budget = 1000000);

struct InvariantProfile {
    std::vector<std::pair<std::string, Cochar>> entries;

    bool operator==(const InvariantProfile& o) const { return entries == o.entries; }
    bool operator!=(const InvariantProfile& o) const { return !(*this == o); }
    const Cochar* at(const std::string& label) const;
    std::string to_string() const;
};

// entry at probe P is inv(P, M)
InvariantProfile f_profile(const Frame& fr, const Lattice& M, const ProbeSet& probes);

bool same_stratum(const Frame& fr, const Lattice& M1, const Lattice& M2, const ProbeSet& probes);

// Translate M into the normalized window: the minimal probe-type lattice
// containing M becomes the standard one.  Returns the translated lattice and
// the central valuation shift that was applied.
std::pair<Lattice, int> normalize_in_orbit(const Frame& fr, const Lattice& M, int window = 2);

// Enumerate the lattices between lower and upper (both standard-monomial)
// whose window-quotient classes are rational over the sigma^{rat_twist}-fixed
// subfield and stable under the listed semilinear chain operators.
struct ChainOpSpec {
    std::function<std::vector<Series>(const std::vector<Series>&)> op;
    int twist = 0;  // sigma power the operator applies to coefficients
};
std::vector<Lattice> enumerate_window_lattices(const Frame& fr, int lo_idx, int hi_idx,
                                               int rat_twist,
                                               const std::vector<ChainOpSpec>& ops,
                                               long long budget);

}  // namespace latinv
