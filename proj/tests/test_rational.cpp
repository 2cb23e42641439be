#include <doctest.h>

#include "costlab/error.hpp"
#include "costlab/rational.hpp"

using costlab::Rational;

TEST_CASE("rationals print in lowest terms") {
  CHECK(costlab::to_string(Rational(3, 6)) == "1/2");
  CHECK(costlab::to_string(Rational(4, 2)) == "2");
  CHECK(costlab::to_string(Rational(-1, 3)) == "-1/3");
  CHECK(costlab::to_string(Rational(0)) == "0");
  CHECK(costlab::to_string(Rational(1001, 1000)) == "1001/1000");
}

TEST_CASE("decimal and fraction literals parse exactly") {
  CHECK(costlab::parse_rational("0.001") == Rational(1, 1000));
  CHECK(costlab::parse_rational("1e-3") == Rational(1, 1000));
  CHECK(costlab::parse_rational("1E-3") == Rational(1, 1000));
  CHECK(costlab::parse_rational("2.5e2") == Rational(250));
  CHECK(costlab::parse_rational("1/1000") == Rational(1, 1000));
  CHECK(costlab::parse_rational("-3/6") == Rational(-1, 2));
  CHECK(costlab::parse_rational(".5") == Rational(1, 2));
  CHECK(costlab::parse_rational("7") == Rational(7));
}

TEST_CASE("malformed literals are rejected") {
  CHECK_THROWS_AS(costlab::parse_rational(""), costlab::Error);
  CHECK_THROWS_AS(costlab::parse_rational("1/0"), costlab::Error);
  CHECK_THROWS_AS(costlab::parse_rational("abc"), costlab::Error);
  CHECK_THROWS_AS(costlab::parse_rational("1.2.3"), costlab::Error);
  CHECK_THROWS_AS(costlab::parse_rational("."), costlab::Error);
  CHECK_THROWS_AS(costlab::parse_rational("1e"), costlab::Error);
}

TEST_CASE("ceil") {
  CHECK(costlab::ceil(Rational(1, 1000) * 1000000) == 1000);
  CHECK(costlab::ceil(Rational(1, 3) * 10) == 4);
  CHECK(costlab::ceil(Rational(5)) == 5);
  CHECK(costlab::ceil(Rational(-1, 2)) == 0);
}
