#include <random>

#include "doctest.h"
#include "latinv/casestudies.hpp"

using namespace latinv;

TEST_CASE("minor lists of the seven-point configuration") {
    GSReport rep = gs_minor_lists(2);
    CHECK(rep.total_triples == 35);
    CHECK(rep.count_A_lambda == 29);
    CHECK(rep.count_A1 == 29);
    CHECK(rep.count_A0 == 17);
    CHECK(rep.count_B == 17);
    CHECK(rep.lists_equal_A0_B);
    CHECK(rep.rank_A1 == 29);
    CHECK(rep.rank_A0 == 17);
    CHECK(rep.rank_B == 17);
    CHECK(rep.collinear_triples_A1 == 6);
    CHECK(rep.no_four_point_line);
}

TEST_CASE("minor lists are characteristic independent") {
    GSReport rep = gs_minor_lists(3);
    CHECK(rep.count_A1 == 29);
    CHECK(rep.count_A0 == 17);
    CHECK(rep.lists_equal_A0_B);
}

TEST_CASE("cauchy-binet") {
    auto A = gs_matrix_A(2);
    // phi = identity reproduces the minor itself
    std::vector<std::vector<int>> id(7, std::vector<int>(7, 0));
    for (int i = 0; i < 7; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    auto [lhs, rhs] = cauchy_binet(A, id, {0, 1, 2});
    CHECK(lhs == rhs);
    CHECK(lhs == MPoly::constant(2, 8, 1));

    std::mt19937_64 rng(99);
    CHECK(cauchy_binet_suite(2, 8, rng));
}

TEST_CASE("hermitian counts") {
    CHECK(hermitian_count(2, 2) == 3);
    CHECK(hermitian_count(3, 2) == 4);
    CHECK(hermitian_count(2, 3) == 9);
    for (int p : {2, 3}) {
        for (int m = 2; m <= 4; ++m) {
            ThetaPsi tp = theta_psi(p, m);
            CHECK(tp.theta_closed == tp.theta_rec);
            CHECK(tp.theta_closed == hermitian_count(p, m));
        }
    }
    CHECK(theta_psi(2, 2).theta_closed == 3);
    CHECK(theta_psi(2, 2).psi == 1);
    CHECK(theta_psi(2, 3).theta_closed == 9);
    CHECK(theta_psi(2, 3).psi == 5);
    for (int p : {2, 3, 5})
        for (int m = 2; m <= 12; ++m) {
            ThetaPsi tp = theta_psi(p, m);
            CHECK(tp.theta_closed == tp.theta_rec);
            CHECK(tp.theta_closed > tp.psi);
        }
}

TEST_CASE("vw tau-closure") {
    // the Fermat cubic over F_16 has only rational points; degree 3 over
    // F_4 is the first field where non-rational isotropic lines appear
    VWReport rep = vw_demo(3, 2, 3, 10);
    CHECK(rep.found_nonrational);
    CHECK(rep.samples >= 1);
    CHECK(rep.chains_ok);
    CHECK(rep.volume_law_ok);
    bool has_d1 = false, has_d0 = false;
    for (int d : rep.d_values) {
        if (d == 1) has_d1 = true;
        if (d == 0) has_d0 = true;
        CHECK(2 * d + 1 <= 3);
    }
    CHECK(has_d1);  // non-rational lines close in one step for n = 3
    CHECK(has_d0);  // the rational sample is tau-invariant
}

TEST_CASE("gsp4 classification on the pinned lattices") {
    auto F = FieldCtx::make(2, 1, 4);  // coefficients in F_16, rationality field F_4
    Frame fr = Frame::gsp4(F);
    ProbeSet probes = probe_set(fr, 1);
    Lattice L0 = fr.standard_lattice();

    StratumDescriptor d0 = gsp4_classify(fr, L0, probes);
    CHECK(d0.is_point);

    // member <e1 + [x] f0, e2, f1, f2> with x outside F_4
    auto build_member = [&](const FFElem& x) {
        SMat g(F.get(), 4, 4);
        auto v = fr.chain_vector(0, 0);                  // e1
        auto f0 = fr.chain_vector(1, -1);                // f0 = eps^{-1} f2
        for (size_t i = 0; i < v.size(); ++i)
            v[i] = v[i] + Series::constant(x) * f0[i];
        g.set_col(0, v);
        g.set_col(1, fr.chain_vector(0, 1));             // e2
        g.set_col(2, fr.chain_vector(1, 0));             // f1
        g.set_col(3, fr.chain_vector(1, 1));             // f2
        return Lattice::from_cols(g);
    };
    FFElem x = F->gen();
    REQUIRE(F->frobenius(x, 2) != x);  // not rational over F_4
    Lattice Mx = build_member(x);
    StratumDescriptor dx = gsp4_classify(fr, Mx, probes);
    CHECK(!dx.is_point);
    // anchor is <e1, e2, f0, f1>
    SMat a(F.get(), 4, 4);
    a.set_col(0, fr.chain_vector(0, 0));
    a.set_col(1, fr.chain_vector(0, 1));
    a.set_col(2, fr.chain_vector(1, -1));
    a.set_col(3, fr.chain_vector(1, 0));
    Lattice anchor = Lattice::from_cols(a);
    const Probe* pa = probes.find(anchor);
    REQUIRE(pa != nullptr);
    CHECK(dx.anchor_label == pa->label);

    // rational x gives a point
    FFElem xr = F->zero();
    for (unsigned long long i = 1; i < F->size(); ++i) {
        FFElem cand = F->from_index(i);
        if (F->frobenius(cand, 2) == cand && !cand.is_one()) {
            xr = cand;
            break;
        }
    }
    REQUIRE(!xr.is_zero());
    StratumDescriptor dr = gsp4_classify(fr, build_member(xr), probes);
    CHECK(dr.is_point);

    // profile entry of Mx at the probe Lambda_0 is the minimal value
    InvariantProfile prof = f_profile(fr, Mx, probes);
    const Probe* p0 = probes.find(L0);
    REQUIRE(p0 != nullptr);
    CHECK(*prof.at(p0->label) == Cochar{1, 0, 0, -1});
}

TEST_CASE("gsp4 survey at p = 2") {
    GSp4Survey rep = gsp4_survey(2, 2, 1, 4000000);
    CHECK(rep.member_count > 0);
    CHECK(rep.line_group_count > 0);
    CHECK(rep.groupings_coincide);
    CHECK(rep.line_value_minimal);
    CHECK(rep.points_per_line_ok);
    CHECK(rep.lines_per_point_ok);
    CHECK(rep.eo_constant_on_groups);
    CHECK(rep.points_per_line == 5);
    CHECK(rep.lines_per_point == 3);
}
