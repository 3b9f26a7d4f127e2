#include <random>

#include "doctest.h"
#include "latinv/ffield.hpp"

using namespace latinv;

namespace {
FFElem random_elem(const FieldCtxPtr& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned long long> dist(0, F->size() - 1);
    return F->from_index(dist(rng));
}
}  // namespace

TEST_CASE("defining polynomials are canonical") {
    auto F4 = FieldCtx::make(2, 1, 2);
    // lex-least monic irreducible quadratic over F_2 is 1 + x + x^2
    CHECK(F4->defining_poly() == std::vector<uint8_t>{1, 1, 1});
    auto F9 = FieldCtx::make(3, 1, 2);
    // over F_3: x^2 + 1 is irreducible and lex-least
    CHECK(F9->defining_poly() == std::vector<uint8_t>{1, 0, 1});
}

TEST_CASE("field axioms on random samples") {
    std::mt19937_64 rng(12345);
    for (auto [p, r, e] : std::vector<std::array<int, 3>>{
             {2, 1, 4}, {2, 1, 6}, {3, 1, 5}, {3, 1, 6}, {2, 2, 3}, {2, 2, 6}}) {
        auto F = FieldCtx::make(p, r, e);
        for (int trial = 0; trial < 50; ++trial) {
            FFElem a = random_elem(F, rng), b = random_elem(F, rng), c = random_elem(F, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            if (!a.is_zero()) {
                CHECK(a * F->inv(a) == F->one());
            }
            CHECK(a - a == F->zero());
        }
    }
}

TEST_CASE("frobenius is a field automorphism with the right order") {
    std::mt19937_64 rng(99);
    for (auto [p, r, e] : std::vector<std::array<int, 3>>{{2, 1, 6}, {3, 1, 4}, {2, 2, 4}}) {
        auto F = FieldCtx::make(p, r, e);
        for (int trial = 0; trial < 40; ++trial) {
            FFElem a = random_elem(F, rng), b = random_elem(F, rng);
            CHECK(F->frobenius(a + b, 1) == F->frobenius(a, 1) + F->frobenius(b, 1));
            CHECK(F->frobenius(a * b, 1) == F->frobenius(a, 1) * F->frobenius(b, 1));
            // sigma^{k1+k2} = sigma^{k1} sigma^{k2}, including inverses
            CHECK(F->frobenius(a, 3) == F->frobenius(F->frobenius(a, 2), 1));
            CHECK(F->frobenius(F->frobenius(a, 1), -1) == a);
            // r*e applications of the p-power map are the identity
            CHECK(F->frobenius_p(a, r * e) == a);
            // frobenius(x, 1) = x^q
            CHECK(F->frobenius(a, 1) == F->pow(a, static_cast<long long>(F->q())));
        }
    }
}

TEST_CASE("frobenius fixes exactly F_q (exhaustive)") {
    for (auto [p, r, e] : std::vector<std::array<int, 3>>{{2, 1, 8}, {3, 1, 4}, {2, 2, 4}}) {
        auto F = FieldCtx::make(p, r, e);
        unsigned long long fixed = 0;
        for (unsigned long long i = 0; i < F->size(); ++i) {
            FFElem x = F->from_index(i);
            if (F->frobenius(x, 1) == x) ++fixed;
        }
        CHECK(fixed == F->q());
    }
}

TEST_CASE("frobenius spec values") {
    auto F = FieldCtx::make(2, 1, 2);
    CHECK(F->frobenius(F->zero(), 5) == F->zero());
    CHECK(F->frobenius(F->one(), 1) == F->one());
    FFElem g = F->gen();
    CHECK(F->frobenius(g, 1) == g * g);
    CHECK(F->frobenius(g, 1) != g);
}

TEST_CASE("element degrees") {
    auto F64 = FieldCtx::make(2, 1, 6);
    CHECK(F64->element_degree(F64->one()) == 1);
    CHECK(F64->element_degree(F64->gen()) == 6);
    CHECK_THROWS_AS(F64->element_degree(F64->zero()), Error);

    // trace and norm of a degree-2 element land in F_p
    for (int p : {2, 3, 5}) {
        auto F = FieldCtx::make(p, 1, 2);
        FFElem g = F->gen();
        FFElem tr = g + F->frobenius_p(g, 1);
        if (!tr.is_zero()) CHECK(F->element_degree(tr) == 1);
        CHECK(F->element_degree(g * F->frobenius_p(g, 1)) == 1);
    }
}

TEST_CASE("subfield embedding is a ring homomorphism") {
    auto F4 = FieldCtx::make(2, 1, 2);
    auto F16 = FieldCtx::make(2, 1, 4);
    FFElem a = F4->gen(), b = F4->gen() + F4->one();
    FFElem ea = F16->embed(*F4, a), eb = F16->embed(*F4, b);
    CHECK(F16->embed(*F4, a * b) == ea * eb);
    CHECK(F16->embed(*F4, a + b) == ea + eb);
    CHECK(F16->element_degree(ea) == 2);
}

TEST_CASE("digit round trip") {
    auto F = FieldCtx::make(3, 1, 3);
    for (unsigned long long i = 0; i < F->size(); ++i) {
        FFElem x = F->from_index(i);
        CHECK(F->from_digits(F->digits(x)) == x);
        CHECK(F->index(x) == i);
    }
}
