// Copyright 2026 The elldiv authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "elldiv/field.hpp"

using namespace elldiv;

TEST_CASE("prime field arithmetic is exact") {
    auto F5 = FieldDescriptor::prime_field(5);
    auto a = F5->from_int(3), b = F5->from_int(4);
    CHECK((a + b).as_int() == 2);
    CHECK((a - b).as_int() == 4);
    CHECK((a * b).as_int() == 2);
    CHECK((a / b).as_int() == 2);  // 3 * 4^-1 = 3 * 4 = 12 = 2
    CHECK((-a).as_int() == 2);
    CHECK(a.pow(4).is_one());
    CHECK(F5->from_int(-1).as_int() == 4);
}

TEST_CASE("characteristic 2 and 3 are rejected") {
    CHECK_THROWS_AS(FieldDescriptor::prime_field(2), domain_error);
    CHECK_THROWS_AS(FieldDescriptor::prime_field(3), domain_error);
    CHECK_THROWS_AS(FieldDescriptor::prime_field(6), domain_error);
}

TEST_CASE("extension field inverse and Fermat") {
    auto F25 = FieldDescriptor::extension_of_degree(5, 2);
    REQUIRE(F25->order() == 25);
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        auto a = F25->random_element(rng);
        if (a.is_zero()) continue;
        CHECK((a * a.inverse()).is_one());
        CHECK(a.pow(24).is_one());
    }
}

TEST_CASE("reducible modulus rejected") {
    // t^2 - 1 = (t-1)(t+1) over F_5
    CHECK_THROWS_AS(FieldDescriptor::extension_field(5, {Int(-1), Int(0), Int(1)}),
                    domain_error);
    // t^2 + 1 is irreducible over F_7 (-1 is a non-residue)
    CHECK_NOTHROW(FieldDescriptor::extension_field(7, {Int(1), Int(0), Int(1)}));
}

TEST_CASE("ell_power_residue matches exhaustive scan on F_5") {
    auto F5 = FieldDescriptor::prime_field(5);
    CHECK(ell_power_residue(F5->one(), 2));
    CHECK_FALSE(ell_power_residue(F5->from_int(3), 2));
    CHECK(ell_power_residue(F5->from_int(4), 2));
    CHECK_THROWS_AS(ell_power_residue(F5->zero(), 2), domain_error);
    CHECK_THROWS_AS(ell_power_residue(F5->one(), 3), domain_error);  // 3 does not divide 4
}

TEST_CASE("ell_th_root on small fields") {
    auto F5 = FieldDescriptor::prime_field(5);
    auto r = ell_th_root(F5->from_int(4), 2);
    CHECK((r.as_int() == 2 || r.as_int() == 3));

    auto F7 = FieldDescriptor::prime_field(7);
    auto r3 = ell_th_root(F7->from_int(6), 3);
    CHECK(r3.pow(3) == F7->from_int(6));
    CHECK((r3.as_int() == 3 || r3.as_int() == 5 || r3.as_int() == 6));

    auto one_root = ell_th_root(F7->one(), 3);
    CHECK(one_root.pow(3).is_one());

    CHECK_THROWS_AS(ell_th_root(F5->from_int(3), 2), domain_error);
}

TEST_CASE("primitive roots of unity") {
    auto F5 = FieldDescriptor::prime_field(5);
    CHECK(primitive_root_of_unity(F5, 2).as_int() == 4);
    CHECK_THROWS_AS(primitive_root_of_unity(F5, 3), domain_error);

    auto F7 = FieldDescriptor::prime_field(7);
    auto z = primitive_root_of_unity(F7, 3);
    CHECK((z.as_int() == 2 || z.as_int() == 4));
}

TEST_CASE("root sets: {zeta^i * omega} is the full root set of X^ell - a") {
    auto F13 = FieldDescriptor::prime_field(13);
    Int ell = 3;  // 3 | 12
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        auto b = F13->random_element(rng);
        if (b.is_zero()) continue;
        auto a = b.pow(ell);
        REQUIRE(ell_power_residue(a, ell));
        auto w = ell_th_root(a, ell);
        CHECK(w.pow(ell) == a);
        auto zeta = primitive_root_of_unity(F13, ell);
        // the ell candidates are distinct roots
        std::vector<FieldElement> roots;
        auto r = w;
        for (int i = 0; i < 3; ++i) {
            CHECK(r.pow(ell) == a);
            for (const auto& prev : roots) CHECK(prev != r);
            roots.push_back(r);
            r *= zeta;
        }
    }
}

TEST_CASE("residue property: a^ell is always a residue") {
    auto F = FieldDescriptor::extension_of_degree(7, 2);  // q = 49, 48 = 16*3
    Rng rng(3);
    for (Int ell : {Int(2), Int(3)}) {
        for (int i = 0; i < 30; ++i) {
            auto a = F->random_element(rng);
            if (a.is_zero()) continue;
            CHECK(ell_power_residue(a.pow(ell), ell));
            auto w = ell_th_root(a.pow(ell), ell);
            CHECK(w.pow(ell) == a.pow(ell));
        }
    }
}

TEST_CASE("ell_th_root is deterministic per seed") {
    auto F = FieldDescriptor::prime_field(97);
    auto a = F->from_int(61).pow(3);
    auto r1 = ell_th_root(a, 3, 42);
    auto r2 = ell_th_root(a, 3, 42);
    CHECK(r1 == r2);
}
