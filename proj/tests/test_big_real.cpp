#include <doctest.h>

#include "hypopq/big_real.hpp"
#include "hypopq/error.hpp"
#include "hypopq/rational.hpp"

using namespace hypopq;

TEST_CASE("string round trip at full precision") {
  for (long bits : {53L, 128L, 512L}) {
    const BigReal third = BigReal::from_rational(Rational(1, 3), bits);
    const BigReal back = BigReal::parse(third.to_string(), bits);
    CHECK(back == third);
  }
}

TEST_CASE("binary ops keep the wider precision") {
  const BigReal a(1, 64);
  const BigReal b(3, 256);
  CHECK((a / b).bits() == 256);
  CHECK((b - a).bits() == 256);
}

TEST_CASE("division by zero is NonFinite") {
  const BigReal one(1, 64);
  const BigReal zero(0, 64);
  CHECK_THROWS_AS(one / zero, Error);
  try {
    (void)(one / zero);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
  }
}

TEST_CASE("to_rational is exact") {
  const BigReal x = BigReal::pow2(-40, 128) + 1L;
  CHECK(x.to_rational() == Rational(1) + Rational(1, mpz_class(1) << 40));
}

TEST_CASE("parse_rational forms") {
  CHECK(parse_rational("3/2").value == Rational(3, 2));
  CHECK(parse_rational("3/2").exact_form);
  CHECK(parse_rational("-7").value == Rational(-7));
  CHECK(parse_rational("2^-3").value == Rational(1, 8));
  const ParsedRational d = parse_rational("1.25e-1");
  CHECK(d.value == Rational(1, 8));
  CHECK_FALSE(d.exact_form);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}
