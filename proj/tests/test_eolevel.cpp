#include <set>

#include "doctest.h"
#include "latinv/eolevel.hpp"

using namespace latinv;

namespace {
Lattice span_of_chain_indices(const Frame& fr, const std::vector<int>& paper_indices) {
    SMat gens(fr.field(), fr.dim(), static_cast<int>(paper_indices.size()));
    for (size_t j = 0; j < paper_indices.size(); ++j)
        gens.set_col(static_cast<int>(j), fr.chain_vector(0, paper_indices[j] - 1));
    return Lattice::from_cols(gens);
}
}  // namespace

TEST_CASE("cycle strings") {
    WeylElt w = from_cycle_string("(465)", 9);
    CHECK(w(3) == 5);  // 4 -> 6, zero-based
    CHECK(w(5) == 4);
    CHECK(w(4) == 3);
    CHECK(cycle_string(w) == "(465)");
    CHECK(cycle_string(WeylElt::identity(5)) == "()");
    CHECK(from_cycle_string(cycle_string(from_cycle_string("(36475)", 9)), 9) ==
          from_cycle_string("(36475)", 9));
}

TEST_CASE("mu_weyl_set") {
    MuWeylData d2 = mu_weyl_set({1, 0}, 2);
    CHECK(d2.reps.size() == 2);
    MuWeylData d9 = mu_weyl_set({1, 1, 1, 1, 0, 0, 0, 0, 0}, 9);
    CHECK(d9.reps.size() == 126);
    bool has_id = false;
    for (const auto& w : d9.reps) has_id = has_id || w == WeylElt::identity(9);
    CHECK(has_id);
    CHECK_THROWS_AS(mu_weyl_set({2, 0}, 2), Error);

    // brute force: every representative has minimal length in its coset
    MuWeylData d4 = mu_weyl_set({1, 1, 0, 0}, 4);
    CHECK(d4.reps.size() == 6);
    std::vector<WeylElt> all;
    {
        std::vector<int> p{0, 1, 2, 3};
        do {
            WeylElt w;
            w.perm = p;
            all.push_back(w);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    // W_M = S_{0,1} x S_{2,3}
    std::vector<WeylElt> wm;
    for (const auto& s : all) {
        bool in = (s(0) < 2) == (0 < 2) && s(0) < 2 && s(1) < 2 && s(2) >= 2 && s(3) >= 2;
        if (in) wm.push_back(s);
    }
    CHECK(wm.size() == 4);
    for (const auto& rep : d4.reps) {
        for (const auto& s : wm) CHECK((s * rep).length() >= rep.length());
    }
    // representatives cover all cosets exactly once
    std::set<std::vector<int>> coset_ids;
    for (const auto& rep : d4.reps) {
        std::set<std::vector<int>> orbit;
        for (const auto& s : wm) orbit.insert((s * rep).perm);
        coset_ids.insert(*orbit.begin());
    }
    CHECK(coset_ids.size() == 6);
}

TEST_CASE("model signatures are pairwise distinct") {
    auto F = FieldCtx::make(2, 1, 2);
    SUBCASE("GL4") {
        MuWeylData d = mu_weyl_set({1, 1, 0, 0}, 4);
        std::set<FiltSignature> sigs;
        for (const auto& w : d.reps)
            sigs.insert(canonical_filtration_signature(model_residue(F.get(), d, w)));
        CHECK(sigs.size() == d.reps.size());
    }
    SUBCASE("GL9") {
        MuWeylData d = mu_weyl_set({1, 1, 1, 1, 0, 0, 0, 0, 0}, 9);
        std::set<FiltSignature> sigs;
        for (const auto& w : d.reps)
            sigs.insert(canonical_filtration_signature(model_residue(F.get(), d, w)));
        CHECK(sigs.size() == d.reps.size());
    }
}

TEST_CASE("canonical filtration is idempotent and model-consistent") {
    auto F = FieldCtx::make(2, 1, 2);
    MuWeylData d = mu_weyl_set({1, 1, 0, 0}, 4);
    for (const auto& w : d.reps) {
        ResidueModule D = model_residue(F.get(), d, w);
        FiltSignature s1 = canonical_filtration_signature(D);
        FiltSignature s2 = canonical_filtration_signature(D);
        CHECK(s1 == s2);
        CHECK(s1.front().first == 0);
        CHECK(s1.back().first == 4);
        // dim im F = h - m = 2
        CHECK(s1.back().second == 2);
    }
}

TEST_CASE("superbasic frames match their tau_mu model") {
    // the standard lattice of the superbasic frame h=2, m=1 is the model of
    // w = identity (b = tau_mu for mu = (1,0))
    auto F = FieldCtx::make(2, 1, 4);
    Frame fr = Frame::superbasic_res(F, 2, {1});
    WeylElt w = trunc_level1(fr, fr.standard_lattice(), {1, 0});
    FiltSignature sig = canonical_filtration_signature(residue_module(fr, fr.standard_lattice()));
    MuWeylData d = mu_weyl_set({1, 0}, 2);
    CHECK(sig == canonical_filtration_signature(model_residue(F.get(), d, w)));
}

TEST_CASE("EO is invariant under the J-action") {
    auto F = FieldCtx::make(2, 1, 4);
    Frame fr = Frame::superbasic_res(F, 3, {1});
    Lattice M = fr.standard_lattice();
    Cochar mu{1, 0, 0};
    WeylElt w1 = trunc_level1(fr, M, mu);
    WeylElt w2 = trunc_level1(fr, fr.pi_lattice(M, 1), mu);
    WeylElt w3 = trunc_level1(fr, fr.pi_lattice(M, -2), mu);
    CHECK(w1 == w2);
    CHECK(w1 == w3);
}

TEST_CASE("GL9 lattices: truncation and Bruhat invariant") {
    auto F = FieldCtx::make(2, 1, 3);
    Frame fr = Frame::superbasic_res(F, 9, {4});
    Cochar mu{1, 1, 1, 1, 0, 0, 0, 0, 0};

    // lattice of the semi-module A_1 = {1, 2, 5, 6, 7, ...}
    Lattice M1 = span_of_chain_indices(fr, {1, 2, 5, 6, 7, 8, 9, 12, 13});
    REQUIRE(in_adlv(fr, M1, mu));
    WeylElt w1 = trunc_level1(fr, M1, mu);
    WeylElt b1 = bruhat_invariant(w1, mu);
    // stated for the lower-triangular Borel: the three-cycle (465)
    CHECK(cycle_string(opposite_borel(b1)) == "(465)");

    // deformed lattice: e1 + c e3, e2 + d e4, and all e_i with i >= 5,
    // with sigma^2(d) != c
    FFElem c = F->gen(), dcoef = F->gen();
    REQUIRE(F->frobenius(dcoef, 2) != c);
    REQUIRE(F->element_degree(c) >= 3);
    SMat gens(F.get(), 9, 9);
    auto vec_plus = [&](int i, const FFElem& coef, int j) {
        auto v = fr.chain_vector(0, i - 1);
        auto w = fr.chain_vector(0, j - 1);
        for (size_t k = 0; k < v.size(); ++k)
            v[k] = v[k] + Series::constant(coef) * w[k];
        return v;
    };
    gens.set_col(0, vec_plus(1, c, 3));
    gens.set_col(1, vec_plus(2, dcoef, 4));
    int col = 2;
    for (int i : {5, 6, 7, 8, 9, 12, 13}) gens.set_col(col++, fr.chain_vector(0, i - 1));
    Lattice M2 = Lattice::from_cols(gens);
    REQUIRE(in_adlv(fr, M2, mu));
    WeylElt w2 = trunc_level1(fr, M2, mu);
    WeylElt b2 = bruhat_invariant(w2, mu);
    CHECK(cycle_string(opposite_borel(b2)) == "(36475)");

    // same semi-module, different Bruhat invariant
    CHECK(b1 != b2);
}
