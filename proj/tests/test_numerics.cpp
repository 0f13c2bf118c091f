#include <doctest.h>

#include <cmath>

#include "hypopq/error.hpp"
#include "hypopq/numerics.hpp"
#include "hypopq/weights.hpp"
#include "support.hpp"

using namespace hypopq;
using hypopq::test::at_bits;
using hypopq::test::rel;

TEST_CASE("context validation and digit conversion") {
  CHECK_THROWS_AS(at_bits(16).validate(), Error);
  CHECK_NOTHROW(at_bits(24).validate());
  CHECK(bits_for_digits(10) == 34);
  CHECK(bits_for_digits(20) == 67);
  CHECK(bits_for_digits(50) == 167);
}

TEST_CASE("sum_series examples") {
  SUBCASE("zero series") {
    const PrecisionCtx ctx = at_bits(128);
    CHECK(sum_series([&](std::size_t) { return ctx.zero(); }, ctx).is_zero());
  }
  SUBCASE("geometric") {
    const PrecisionCtx ctx = at_bits(128);
    const BigReal s = sum_series([&](std::size_t k) { return BigReal::pow2(-static_cast<long>(k), ctx.working_bits()); }, ctx);
    CHECK(rel(s, ctx.real(2)) < std::ldexp(1.0, -120));
  }
  SUBCASE("2 ln 2") {
    const PrecisionCtx ctx = at_bits(256);
    const BigReal s = sum_series(
        [&](std::size_t k) {
          return BigReal::pow2(-static_cast<long>(k), ctx.working_bits()) / static_cast<long>(k + 1);
        },
        ctx);
    const BigReal expected = log(ctx.real(2)) * 2L;
    CHECK(rel(s, expected) < std::ldexp(1.0, -240));
  }
  SUBCASE("term cap") {
    PrecisionCtx ctx = at_bits(64);
    ctx.series_max_terms = 10;
    CHECK_THROWS_AS(sum_series([&](std::size_t) { return ctx.real(1); }, ctx), Error);
  }
}

TEST_CASE("sum_series is deterministic and guard-stable") {
  PrecisionCtx ctx = at_bits(200);
  auto term = [&](std::size_t k) { return BigReal(1, 400) / static_cast<long>((k + 1) * (k + 1) * (k + 1)) / pow(BigReal(3, 400), k); };
  const BigReal a = sum_series(term, ctx);
  const BigReal b = sum_series(term, ctx);
  CHECK(a == b);
  PrecisionCtx wide = ctx;
  wide.guard_bits = 2 * ctx.guard_bits;
  CHECK(rel(sum_series(term, wide), a) < std::ldexp(1.0, -(200 - 16)));
}

TEST_CASE("central_derivative is exact on low-degree polynomials") {
  const PrecisionCtx ctx = at_bits(128);
  const BigReal h = ctx.real(Rational(1, 64));
  const BigReal d1 = central_derivative([](const BigReal& c) { return c * c; }, ctx.real(1), h, 1, ctx);
  CHECK(d1 == 2L);
  const BigReal d2 = central_derivative([](const BigReal& c) { return c * c * c; }, ctx.real(2), h, 2, ctx);
  CHECK(d2 == 12L);
}

TEST_CASE("stencil step guards") {
  const PrecisionCtx ctx = at_bits(128);
  CHECK_THROWS_AS(stencil_nodes(ctx.real(Rational(1, 2)), BigReal::pow2(-80, 128), ctx), Error);
  try {
    stencil_nodes(ctx.real(Rational(1, 100)), ctx.real(Rational(1, 100)), ctx, StencilDomain::UnitInterval);
    FAIL("expected DomainExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainExceeded);
  }
  CHECK(default_step(ctx) == BigReal::pow2(-32, 128));
}

TEST_CASE("stencil error falls by about 16 per halving") {
  const PrecisionCtx ctx = at_bits(256);
  const BigReal c0 = ctx.real(Rational(1, 2));
  const BigReal exact = exp(c0);
  auto err = [&](long k) {
    const BigReal h = BigReal::pow2(-k, 256);
    return abs(central_derivative([](const BigReal& c) { return exp(c); }, c0, h, 1, ctx) - exact);
  };
  for (long k = 4; k < 8; ++k) {
    const double ratio = (err(k) / err(k + 1)).to_double();
    CHECK(ratio >= 14.0);
    CHECK(ratio <= 18.0);
  }
}

TEST_CASE("c dm0/dc equals m1") {
  const PrecisionCtx ctx = at_bits(256);
  const Params p = hypopq::test::base_set();
  const BigReal h = BigReal::pow2(-20, 256);
  const BigReal dm0 = central_derivative(
      [&](const BigReal& c) { return moment(p.with_c(c.to_rational()), 0, ctx); }, ctx.real(p.c), h, 1, ctx,
      StencilDomain::UnitInterval);
  const BigReal m1 = moment(p, 1, ctx);
  CHECK(rel(dm0 * ctx.real(p.c), m1) < 1e-20);
}

TEST_CASE("TermBalance normalises by the largest term") {
  const PrecisionCtx ctx = at_bits(64);
  TermBalance t(ctx);
  t.add(ctx.real(1000)).sub(ctx.real(999));
  CHECK(t.residual().to_double() == doctest::Approx(1e-3));
  CHECK(TermBalance(ctx).residual().is_zero());
}
