#pragma once

#include <set>

#include "latinv/isocrystal.hpp"

namespace latinv {

// Entry value for "component vanishes identically".
inline constexpr int kGammaInf = INT32_MAX / 4;

// Start-index vector of a nonzero vector: per chain component, the least
// chain index carrying a nonzero coefficient (kGammaInf if the component
// vanishes).  Indices are 0-based for isoclinic frames (e_{z,i,0} starts at
// 0) and 1-based for superbasic-res frames (e_{1,tau} starts at 1).
using GammaVec = std::vector<int>;

// Weak EL-chart presented by its residue-class minima: per component, the h
// minimal chart elements, one in each class mod h, sorted increasingly.
struct SemiModuleChart {
    int h = 0;
    std::vector<std::vector<int>> minima;  // one sorted transversal per component

    bool operator==(const SemiModuleChart& o) const { return h == o.h && minima == o.minima; }
    bool operator!=(const SemiModuleChart& o) const { return !(*this == o); }
    // chart membership: index in component c
    bool contains(int comp, int idx) const;
};

GammaVec start_gamma(const Frame& fr, const std::vector<Series>& v);

// chart of a lattice: per component the start-index minima of the projected
// lattice, computed by valuation-echelon reduction
SemiModuleChart chart_of_lattice(const Frame& fr, const Lattice& M);

// A^mu of the Iwahori decomposition for Res GL_h: minima i + mu_{i,tau} h,
// 1 <= i <= h, per component tau
SemiModuleChart mu_to_chart(const std::vector<std::vector<int>>& mu, int h);
std::vector<std::vector<int>> chart_to_mu(const SemiModuleChart& chart);

// the rectangular chart with components Z_{>= l_tau}
SemiModuleChart rectangular_chart(int h, const std::vector<int>& l_tau);
// the unique lattice with that chart
Lattice rectangular_lattice(const Frame& fr, const std::vector<int>& l_tau);

// gamma in A(M) = { start_gamma(v) : v in M } via the volume criterion; needs
// q^e > number of finite coordinates of gamma
bool gamma_member(const Frame& fr, const Lattice& M, const GammaVec& gamma);

struct BoxedMultiSemiModule {
    int m = 1, n = 1, l = 1, box = 0;
    std::set<GammaVec> members;

    bool contains(const GammaVec& g) const { return members.count(g) > 0; }
    bool operator==(const BoxedMultiSemiModule& o) const {
        return m == o.m && n == o.n && l == o.l && box == o.box && members == o.members;
    }
};

// box truncation of the generic multi-semimodule: closure of 0 and the
// permuted (inf,...,inf,imn,...,imn) generators under min and +m, +n shifts
BoxedMultiSemiModule agen_box(int m, int n, int l, int box);

// membership characterization gamma_i in c_i(gamma) m n + mN + nN
bool agen_char(const GammaVec& gamma, int m, int n);

// boxed membership table of A(M) computed pointwise with gamma_member
BoxedMultiSemiModule boxed_A(const Frame& fr, const Lattice& M, int box);

// all gamma vectors in the box grid ({0..box} u {inf})^l except all-inf
std::vector<GammaVec> box_grid(int l, int box);

}  // namespace latinv
