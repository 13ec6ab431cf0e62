#include "doctest.h"
#include "windtree/sv_constants.hpp"

using namespace windtree;

namespace {
BigRat central(long m) { return make_rat(pow_int(4, static_cast<unsigned long>(m)) * factorial(m) * factorial(m), factorial(2 * m)); }
}  // namespace

TEST_CASE("delta") {
    CHECK(delta(1) == make_rat(2, 3));
    CHECK(delta(2) == make_rat(8, 15));
    CHECK(delta(3) == make_rat(16, 35));
    for (long m = 1; m <= 40; ++m) CHECK(delta(m) == make_rat(double_factorial(2 * m), double_factorial(2 * m + 1)));
}

TEST_CASE("pocket profile counts") {
    auto c1 = pocket_profile_counts(1);
    CHECK(c1[{0, 0}] == 0);
    CHECK(c1[{1, 1}] == 1);
    CHECK(c1[{1, 0}] == 0);
    CHECK(c1[{0, 1}] == 0);
    auto c2 = pocket_profile_counts(2);
    CHECK(c2[{0, 0}] == 0);
    CHECK(c2[{1, 1}] == 4);
    CHECK(c2[{1, 0}] == 1);
    CHECK(c2[{0, 1}] == 1);
    auto c3 = pocket_profile_counts(3);
    CHECK(c3[{0, 0}] == 1);
    CHECK(c3[{1, 1}] == 7);
    CHECK(c3[{1, 0}] == 2);
    CHECK(c3[{0, 1}] == 2);
    for (long m = 1; m <= 50; ++m) {
        BigInt total = 0;
        for (auto& [p, v] : pocket_profile_counts(m)) {
            CHECK(p.good());
            total += v;
        }
        CHECK(total == (m - 1) * (m - 2) / 2 + (3 * m - 2) + 2 * (m - 1));
    }
}

TEST_CASE("dumbbell profile counts") {
    auto d21 = dumbbell_profile_counts(2, 1);
    CHECK(d21[{0, 0}] == 0);
    CHECK(d21[{1, 1}] == 2);
    CHECK(d21[{1, 0}] == 0);
    CHECK(d21[{0, 1}] == 0);
    CHECK(dumbbell_profile_counts(4, 1)[{0, 0}] == 12);
    CHECK(dumbbell_profile_counts(3, 1)[{1, 1}] == 30);
    CHECK_THROWS_AS(dumbbell_profile_counts(3, 0), QOutOfRange);
    CHECK_THROWS_AS(dumbbell_profile_counts(3, 3), QOutOfRange);
    for (long m = 2; m <= 20; ++m)
        for (long q = 1; q < m; ++q)
            for (auto& [p, v] : dumbbell_profile_counts(m, q)) CHECK(v >= 0);
}

TEST_CASE("lifting factors") {
    CHECK(lifting_factor({0, 0}, true, false) == 32);
    CHECK(lifting_factor({1, 1}, true, false) == 4);
    CHECK(lifting_factor({0, 0}, false, false) == 64);
    CHECK(lifting_factor({1, 1}, false, false) == 8);
    CHECK(lifting_factor({1, 0}, true, true) == 8);
    CHECK(lifting_factor({0, 0}, true, true) == 64);
    CHECK_THROWS_AS(lifting_factor({2, 0}, true, false), NotGoodProfile);
}

TEST_CASE("genus zero constants") {
    CHECK(c_pocket_genus0() == PiRational(make_rat(1, 2)));
    CHECK(c_dumbbell_genus0(2, 1) == PiRational(make_rat(1, 12)));
    CHECK(c_dumbbell_genus0(3, 1) == PiRational(make_rat(1, 60)));
    CHECK_THROWS_AS(c_dumbbell_genus0(3, 0), QOutOfRange);
}

TEST_CASE("good constants") {
    CHECK(c_pocket_good(1) == PiRational(BigRat(2)));
    CHECK(c_pocket_good(2) == PiRational(BigRat(12)));
    CHECK(c_dumbbell_good(1) == PiRational(BigRat(0)));
    CHECK(c_dumbbell_good(2) == PiRational(make_rat(4, 3)));
    for (long m = 1; m <= 50; ++m) {
        BigRat M(m);
        CHECK(c_pocket_good(m) == PiRational((4 * M * M - 7 * M + 4) * 2));
        CHECK(c_dumbbell_good(m) == PiRational((8 * M * M - 74 * M - 90 + 78 * central(m)) * make_rat(2, 3)));
    }
}

TEST_CASE("main constants") {
    auto b1 = constants_bundle(1);
    CHECK(b1.c_main == PiRational(make_rat(1, 2)));
    CHECK(b1.c_area_main == PiRational(make_rat(1, 3)));
    CHECK(b1.delta == make_rat(2, 3));
    auto b2 = constants_bundle(2);
    CHECK(b2.c_main == PiRational(make_rat(10, 3)));
    CHECK(b2.delta == make_rat(8, 15));
    for (long m = 1; m <= 50; ++m) {
        auto b = constants_bundle(m);
        BigRat M(m);
        CHECK(b.c_good == b.c_pocket_good + b.c_dumbbell_good);
        CHECK(b.c_main == b.c_good / BigRat(4));
        CHECK(b.c_area_main == b.c_area_good / BigRat(4));
        CHECK(b.c_main == PiRational((20 * M * M - 95 * M - 78 + 78 * central(m)) / 6));
        CHECK(b.c_area_main == PiRational((8 * M - 33 + 39 * delta(m)) / 3));
        CHECK(b.c_main.coeff > 0);
        CHECK(b.c_main == c_main_closed(m));
        CHECK(b.c_area_main == c_area_main_closed(m));
    }
}
