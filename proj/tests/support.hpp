#pragma once

#include <string>

#include <doctest.h>

#include "hypopq/big_real.hpp"
#include "hypopq/numerics.hpp"
#include "hypopq/weights.hpp"

namespace hypopq::test {

inline Params base_set() { return Params::parse("3/2", "3", "1/3", "1/2"); }
inline Params second_set() { return Params::parse("1", "1", "2", "1/2"); }

inline PrecisionCtx at_bits(long bits) {
  PrecisionCtx ctx;
  return ctx.with_bits(bits);
}

/// |a - b| / max(|b|, 1e-300).
inline double rel(const BigReal& a, const BigReal& b) {
  BigReal d = abs(a - b);
  if (!b.is_zero()) d = d / abs(b);
  return d.to_double();
}

inline double rel(const BigReal& a, const std::string& golden) {
  return rel(a, BigReal::parse(golden, a.bits() + 64));
}

}  // namespace hypopq::test
