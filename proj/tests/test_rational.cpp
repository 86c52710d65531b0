// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include "sastlong/rational.hpp"

using sastlong::Rational;

TEST_CASE("rationals normalize and compare") {
    CHECK(Rational(3, 6) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(13, 18) > Rational(1, 2));
}

TEST_CASE("rational arithmetic") {
    CHECK(Rational(1, 6) * Rational(13, 3) == Rational(13, 18));
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
    CHECK(Rational(3) / Rational(13) == Rational(3, 13));
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("decimal rendering keeps at least 9 significant digits") {
    CHECK(Rational(1, 2).to_decimal() == "0.5");
    CHECK(Rational(1, 4).to_decimal() == "0.25");
    CHECK(Rational(3).to_decimal() == "3");
    CHECK(Rational(13, 18).to_decimal() == "0.722222222222");
    CHECK(Rational(3, 13).to_decimal() == "0.230769230769");
    CHECK(Rational(1, 3).to_decimal(9) == "0.333333333");
    CHECK(Rational(-5, 4).to_decimal() == "-1.25");
    CHECK(Rational(1, 1024).to_decimal() == "0.0009765625");
    CHECK(Rational(88, 171).to_decimal() == "0.514619883040"); // truncated expansion
}
