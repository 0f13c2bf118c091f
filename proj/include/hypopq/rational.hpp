#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hypopq {

using Rational = mpq_class;

struct ParsedRational {
  Rational value;
  /// False when the text was a decimal ("0.3", "1e-6"): the value is still the
  /// exact rational the text denotes, but it is flagged as decimal input.
  bool exact_form = true;
};

/// Accepts "p/q", integers, decimals with optional exponent, and "2^k".
ParsedRational parse_rational(std::string_view text);

/// Canonical "p/q" or "p" form.
std::string to_string(const Rational& q);

}  // namespace hypopq
