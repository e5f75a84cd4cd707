#include <doctest.h>

#include "hass/counting.hpp"

using namespace hass;
using namespace hass::counting;

TEST_CASE("stirling2 recurrence values") {
    CHECK(stirling2(3, 2) == 3);
    CHECK(stirling2(4, 2) == 7);
    CHECK(stirling2(5, 5) == 1);
    CHECK(stirling2(0, 0) == 1);
    CHECK(stirling2(4, 0) == 0);
    CHECK_THROWS_AS(stirling2(2, 3), InvalidArgument);
}

TEST_CASE("eulerian values against the permutation definition") {
    // Permutations of {1,2,3} by ascent count: 321 has 0; 132, 213, 231,
    // 312 have 1; 123 has 2.
    CHECK(eulerian(3, 0) == 1);
    CHECK(eulerian(3, 1) == 4);
    CHECK(eulerian(3, 2) == 1);
    CHECK(eulerian(4, 2) == 11);
    CHECK(eulerian(5, 0) == 1);
    CHECK(eulerian(0, 0) == 1);
    CHECK_THROWS_AS(eulerian(3, 3), InvalidArgument);
}

TEST_CASE("Worpitzky-style identity links Eulerian and Stirling numbers") {
    for (unsigned n = 1; n <= 8; ++n) {
        for (unsigned l = 1; l <= n; ++l) {
            BigInt lhs = factorial(l) * stirling2(n, l);
            BigInt rhs = 0;
            for (unsigned k = 0; k < n; ++k) rhs += eulerian(n, k) * binomial(k, n - l);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("n_k string counts") {
    CHECK(n_k(2, 1) == 2);  // 00, 11
    CHECK(n_k(2, 2) == 2);  // 01, 10
    CHECK(n_k(3, 2) == 18); // 3 * (2 * 3)
    CHECK_THROWS_AS(n_k(3, 0), InvalidArgument);
    CHECK_THROWS_AS(n_k(3, 4), InvalidArgument);
}

TEST_CASE("sum over n_k recovers n^n") {
    for (unsigned n = 1; n <= 8; ++n) {
        BigInt total = 0;
        for (unsigned k = 1; k <= n; ++k) total += n_k(n, k);
        BigInt npow = 1;
        for (unsigned i = 0; i < n; ++i) npow *= n;
        CHECK(total == npow);
    }
}

TEST_CASE("S(n) by summation") {
    CHECK(s_of_n_sum(1) == 1);
    CHECK(s_of_n_sum(2) == 6);
    CHECK(s_of_n_sum(3) == 147); // 3 + 108 + 36
    CHECK(s_of_n_sum(4) == 6940); // 4 + 1176 + 5184 + 576
    CHECK(s_of_n_sum(5) == 536405);
    CHECK(s_of_n_sum(6) == 62352066);
}

TEST_CASE("class-size restatement of S(n)") {
    // S(n) = sum over symbol subsets of (class size)^2.
    for (unsigned n = 1; n <= 6; ++n) {
        BigInt total = 0;
        for (unsigned k = 1; k <= n; ++k) {
            BigInt cls = factorial(k) * stirling2(n, k);
            total += binomial(n, k) * cls * cls;
        }
        CHECK(total == s_of_n_sum(n));
    }
}

TEST_CASE("generating-function route") {
    // T_3 = x + 3x^2 + x^3, P_3 = 6 + 6x + x^2/2, [x^3] of the product is
    // 24.5 and 3! * 24.5 = 147.
    RationalPoly t3 = touchard(3);
    CHECK(t3.coeff(1) == 1);
    CHECK(t3.coeff(2) == 3);
    CHECK(t3.coeff(3) == 1);
    RationalPoly p3 = convolution_poly(3);
    CHECK(p3.coeff(0) == 6);
    CHECK(p3.coeff(1) == 6);
    CHECK(p3.coeff(2) == BigRational(1, 2));
    CHECK((t3 * p3).coeff(3) == BigRational(49, 2));

    CHECK(s_of_n_gf(1) == 1);
    CHECK(s_of_n_gf(3) == 147);
    CHECK(s_of_n_gf(4) == 6940);
    for (unsigned n = 1; n <= 8; ++n) CHECK(s_of_n_gf(n) == s_of_n_sum(n));
}

TEST_CASE("growth bound in exact integers") {
    CHECK(growth_bound_check(3)); // 147^2 = 21609 > 3^9 = 19683
    CHECK(growth_bound_check(4)); // 6940^2 = 48163600 > 4^12 = 16777216
    CHECK(growth_bound_check(5));
    CHECK(growth_bound_check(6));
    CHECK_THROWS_AS(growth_bound_check(2), InvalidArgument);
}

TEST_CASE("share accounting") {
    auto a10 = max_share_elements(10);
    CHECK(a10.elements == 504); // 2 * C(10,5)
    CHECK(a10.reference == doctest::Approx(516.74).epsilon(0.01));
    CHECK(a10.ratio == doctest::Approx(0.975).epsilon(0.01));
    CHECK(max_share_elements(2).elements == 4);
    CHECK(max_share_elements(4).elements == 12);
}
