#include <doctest.h>

#include "quadrapt/error.hpp"
#include "quadrapt/rational.hpp"

using quadrapt::Rational;

TEST_CASE("rational arithmetic stays in lowest terms") {
  const Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK(Rational(2, -6) == -third);
  CHECK(Rational(-2, -6).str() == "1/3");
  CHECK((Rational(1) - Rational(1, 3) * Rational(3)).num() == 0);
  CHECK(Rational(-1, 3) < Rational(1, 3));
  CHECK(Rational(4, 2).str() == "2");
}

TEST_CASE("rational parsing") {
  CHECK(quadrapt::parse_rational("-1/3") == Rational(-1, 3));
  CHECK(quadrapt::parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(quadrapt::parse_rational("1/0"), quadrapt::Error);
  CHECK_THROWS_AS(quadrapt::parse_rational("x"), quadrapt::Error);
}
