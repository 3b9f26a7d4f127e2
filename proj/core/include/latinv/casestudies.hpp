#pragma once

#include <random>

#include "latinv/jprobe.hpp"
#include "latinv/mpoly.hpp"

namespace latinv {

// ---- thin Schubert cells: minor lists of the 3x7 matrices ----

// variables: x1..x6 (0..5), lambda (6), gamma (7)
std::vector<std::vector<MPoly>> gs_matrix_A(int p);  // A_lambda, lambda symbolic
std::vector<std::vector<MPoly>> gs_matrix_B(int p);

struct MinorList {
    std::vector<std::vector<int>> support;  // column triples with nonzero minor
    std::vector<MPoly> minors;              // the nonzero minors
    int count() const { return static_cast<int>(support.size()); }
};
MinorList minor_list(const std::vector<std::vector<MPoly>>& A);

struct GSReport {
    int total_triples = 0;           // |I_3| = 35
    int count_A_lambda = 0;          // nonzero minors of A_lambda
    int count_A1 = 0, count_A0 = 0, count_B = 0;
    bool lists_equal_A0_B = false;   // L_{A_0} = L_B as sets of triples
    int rank_A1 = 0, rank_A0 = 0, rank_B = 0;
    int collinear_triples_A1 = 0;    // 35 - |L_{A_1}|
    bool no_four_point_line = false;
};
GSReport gs_minor_lists(int p = 2);

// both sides of det((A_lambda phi)_J) = sum_{J'} det((A_lambda)_{J'}) det(phi_{J',J})
std::pair<MPoly, MPoly> cauchy_binet(const std::vector<std::vector<MPoly>>& A,
                                     const std::vector<std::vector<int>>& phi,
                                     const std::vector<int>& J);
bool cauchy_binet_suite(int p, int num_phi, std::mt19937_64& rng);

// ---- Hermitian point counts ----

// #{[x_1 : ... : x_m] in P^{m-1}(F_{p^2}) : sum x_i^{p+1} = 0} by brute force
long long hermitian_count(int p, int m, long long budget = 200000000);

struct ThetaPsi {
    long long theta_closed = 0, theta_rec = 0, psi = 0;
};
ThetaPsi theta_psi(int p, int m);

// ---- Vollaard-Wedhorn tau-closure ----

// smallest tau-invariant lattice containing M0, with the number of steps;
// checks the vertex chain of M0 and of the closure
std::pair<Lattice, int> vw_tau_closure(const Frame& fr, const Lattice& M0);

struct VWReport {
    int n = 0, p = 0, e = 0;
    int samples = 0;
    std::vector<int> d_values;
    bool chains_ok = false;        // closure chain eps L^v c^{2d+1} L c^{n-2d-1} L^v
    bool volume_law_ok = false;    // vol(Lambda) = vol(M0) - d
    bool found_nonrational = false;
};
// build the demo: self-dual tau-stable Lambda in dimension n (odd), sample
// isotropic lines over F_{q^{2e}}, run the closure on their lattices
VWReport vw_demo(int n, int p, int e, int max_samples = 40);

// ---- GSp4 stratification ----

struct StratumDescriptor {
    bool is_point = false;
    std::string anchor_label;  // probe label of the anchor lattice
};

StratumDescriptor gsp4_classify(const Frame& fr, const Lattice& M, const ProbeSet& probes);

struct GSp4Survey {
    int p = 0, e = 0, window = 0;
    int member_count = 0;
    int point_count = 0;
    int line_member_count = 0;
    int line_group_count = 0;
    bool groupings_coincide = false;
    bool line_value_minimal = false;    // entry (1,0,0,-1) at the anchor's rational points
    bool points_per_line_ok = false;    // p^2 + 1 for every line group
    bool lines_per_point_ok = false;    // p + 1 for every interior point
    bool eo_constant_on_groups = false;
    int points_per_line = 0;
    int lines_per_point = 0;
};

// coefficient degree e is over F_{p^2} (the rationality field of tau0)
GSp4Survey gsp4_survey(int p, int e, int window, long long budget = 1000000);

}  // namespace latinv
