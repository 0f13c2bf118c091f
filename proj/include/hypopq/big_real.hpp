#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

namespace hypopq {

/// Binary floating point number with a per-value significand precision,
/// backed by MPFR and always rounded to nearest.
///
/// A binary operation produces a result carrying the larger of its operands'
/// precisions, so values built from one PrecisionCtx stay at that precision.
/// NaN and infinities never escape: any operation producing one throws
/// Error(NonFinite).
class BigReal {
public:
  using Bits = mpfr_prec_t;

  BigReal();
  BigReal(long value, Bits bits);
  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  static BigReal from_rational(const mpq_class& q, Bits bits);
  /// Decimal or scientific notation, e.g. "-1.25e-6".
  static BigReal parse(std::string_view text, Bits bits);
  static BigReal pow2(long exponent, Bits bits);

  Bits bits() const { return mpfr_get_prec(value_); }
  BigReal rounded(Bits bits) const;

  /// Exact: every finite binary float is a dyadic rational.
  mpq_class to_rational() const;
  double to_double() const;
  /// Base-2 exponent e with 2^(e-1) <= |x| < 2^e; a very negative number for 0.
  long exponent2() const;
  /// Decimal scientific string. digits == 0 selects ceil(bits*log10(2)) + 2,
  /// enough to round-trip through parse() at the same precision.
  std::string to_string(int digits = 0) const;

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator+=(long rhs);
  BigReal& operator-=(long rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);
  BigReal operator-() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator+(const BigReal& a, long b);
  friend BigReal operator-(const BigReal& a, long b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator/(const BigReal& a, long b);
  friend BigReal operator+(long a, const BigReal& b);
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator*(long a, const BigReal& b);
  friend BigReal operator/(long a, const BigReal& b);

  friend bool operator==(const BigReal& a, const BigReal& b);
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend bool operator==(const BigReal& a, long b);
  friend std::partial_ordering operator<=>(const BigReal& a, long b);

  friend BigReal abs(const BigReal& x);
  friend BigReal sqrt(const BigReal& x);
  friend BigReal log(const BigReal& x);
  friend BigReal exp(const BigReal& x);
  friend BigReal pow(const BigReal& x, unsigned long n);

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

private:
  explicit BigReal(Bits bits);
  void check_finite(const char* op) const;

  mpfr_t value_;
};

BigReal max(const BigReal& a, const BigReal& b);

}  // namespace hypopq
