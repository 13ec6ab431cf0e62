#include "doctest.h"
#include "windtree/identities.hpp"

using namespace windtree;

TEST_CASE("D sums") {
    CHECK(D_direct(3, 0, 0) == 64);
    CHECK(D_direct(3, 0, 1) == 96);
    for (long m = 0; m <= 12; ++m) {
        CHECK(D_direct(m, 0, 0) == pow_int(4, static_cast<unsigned long>(m)));
        CHECK(D_direct(m, 0, 1) == BigRat(m) / 2 * pow_int(4, static_cast<unsigned long>(m)));
    }
    // D(m,1,0) is X(m,1) by definition of X
    CHECK(D_direct(2, 1, 0) == X_closed(2, 1));
    CHECK(D_recurrence_check(5, 3, 4));
    CHECK(D_recurrence_check(1, 1, 1));
    CHECK(D_recurrence_check(0, 1, 1));
}

TEST_CASE("X sums") {
    CHECK(X_closed(2, 1) == 10);
    CHECK(X_closed(1, 1) == 3);
    for (long m = 0; m <= 30; ++m)
        for (long i = 1; i <= 30; ++i) CHECK(X_direct(m, i) == X_closed(m, i));
}

TEST_CASE("P coefficients") {
    for (long m = 1; m <= 8; ++m) {
        BigRat M(m);
        auto p0 = P_coefficients(m, 0);
        REQUIRE(p0.size() == 2);
        CHECK(p0[0] == M);
        CHECK(p0[1] == -1);
        auto p1 = P_coefficients(m, 1);
        REQUIRE(p1.size() == 3);
        CHECK(p1[0] == M * M - M);
        CHECK(p1[1] == -(2 * M - 1));
        CHECK(p1[2] == 1);
        auto p2 = P_coefficients(m, 2);
        REQUIRE(p2.size() == 4);
        CHECK(p2[0] == M * M * M - 3 * M * M + 2 * M);
        CHECK(p2[1] == -(3 * M * M - 6 * M + 2));
        CHECK(p2[2] == 3 * M - 3);
        CHECK(p2[3] == -1);
    }
}

TEST_CASE("B values") {
    CHECK(B_direct(2, 0) == make_rat(1, 3));
    CHECK(B_direct(3, 0) == make_rat(3, 5));
    CHECK(B_direct(2, 1) == 0);
    CHECK(B_closed(2, 0) == make_rat(1, 3));
    CHECK(B_closed(2, 1) == 0);
    CHECK(B_closed(3, 0) == make_rat(3, 5));
    for (int s = 0; s <= 2; ++s) {
        CHECK(B_direct(1, s) == 0);
        CHECK(B_closed(1, s) == 0);
    }
    CHECK(B_direct(4, 2) == B_closed(4, 2));
    CHECK_THROWS_AS(B_closed(3, 3), UnsupportedS);
    for (long m = 1; m <= 20; ++m)
        for (int s = 0; s <= 2; ++s) CHECK(B_from_A(m, s) == B_direct(m, s));
    CHECK(central_ratio(2) == make_rat(8, 3));
}

TEST_CASE("verify_identities") {
    auto reps = verify_identities(60);
    CHECK(reps.size() == 180);
    for (auto& r : reps) CHECK(r.equal);
    auto one = verify_identities(1);
    CHECK(one.size() == 3);
    for (auto& r : one) CHECK(r.equal);
}

TEST_CASE("verify_identities detects a corrupted closed form") {
    auto bad = verify_identities(10, [](long m, int s) {
        BigRat v = B_closed(m, s);
        if (m == 7 && s == 1) v += make_rat(1, 1000);
        return v;
    });
    long failures = 0;
    for (auto& r : bad) failures += r.equal ? 0 : 1;
    CHECK(failures == 1);
}
