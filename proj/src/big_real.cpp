#include "hypopq/big_real.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "hypopq/error.hpp"

namespace hypopq {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

BigReal::Bits wider(const BigReal& a, const BigReal& b) {
  return std::max(a.bits(), b.bits());
}

}  // namespace

BigReal::BigReal() : BigReal(Bits{64}) {}

BigReal::BigReal(Bits bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long value, Bits bits) : BigReal(bits) {
  mpfr_set_si(value_, value, kRound);
}

BigReal::BigReal(const BigReal& other) : BigReal(other.bits()) {
  mpfr_set(value_, other.value_, kRound);
}

BigReal::BigReal(BigReal&& other) noexcept : BigReal(other.bits()) {
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.bits());
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

BigReal BigReal::from_rational(const mpq_class& q, Bits bits) {
  BigReal r(bits);
  mpfr_set_q(r.value_, q.get_mpq_t(), kRound);
  return r;
}

BigReal BigReal::parse(std::string_view text, Bits bits) {
  BigReal r(bits);
  std::string s(text);
  if (s.empty() || mpfr_set_str(r.value_, s.c_str(), 10, kRound) != 0) {
    throw Error(ErrorKind::InvalidParam, "not a decimal number: '" + s + "'");
  }
  r.check_finite("parse");
  return r;
}

BigReal BigReal::pow2(long exponent, Bits bits) {
  BigReal r(1, bits);
  mpfr_mul_2si(r.value_, r.value_, exponent, kRound);
  return r;
}

BigReal BigReal::rounded(Bits bits) const {
  BigReal r(bits);
  mpfr_set(r.value_, value_, kRound);
  return r;
}

mpq_class BigReal::to_rational() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

double BigReal::to_double() const { return mpfr_get_d(value_, kRound); }

long BigReal::exponent2() const {
  if (is_zero()) return mpfr_get_emin();
  return mpfr_get_exp(value_);
}

std::string BigReal::to_string(int digits) const {
  if (digits <= 0) {
    digits = static_cast<int>(std::ceil(static_cast<double>(bits()) * std::log10(2.0))) + 2;
  }
  if (is_zero()) return "0";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), value_, kRound);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string out;
  if (mant.front() == '-') {
    out.push_back('-');
    mant.erase(mant.begin());
  }
  out.push_back(mant.front());
  if (mant.size() > 1) {
    out.push_back('.');
    out.append(mant, 1, std::string::npos);
  }
  out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

void BigReal::check_finite(const char* op) const {
  if (!mpfr_number_p(value_)) {
    throw Error(ErrorKind::NonFinite, std::string("non-finite result in ") + op);
  }
}

namespace {

void require_nonzero(const BigReal& d) {
  if (d.is_zero()) throw Error(ErrorKind::NonFinite, "division by zero");
}

}  // namespace

BigReal& BigReal::operator+=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), kRound);
  mpfr_add(value_, value_, rhs.value_, kRound);
  check_finite("add");
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), kRound);
  mpfr_sub(value_, value_, rhs.value_, kRound);
  check_finite("sub");
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), kRound);
  mpfr_mul(value_, value_, rhs.value_, kRound);
  check_finite("mul");
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  require_nonzero(rhs);
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), kRound);
  mpfr_div(value_, value_, rhs.value_, kRound);
  check_finite("div");
  return *this;
}

BigReal& BigReal::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, kRound);
  check_finite("add");
  return *this;
}

BigReal& BigReal::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, kRound);
  check_finite("sub");
  return *this;
}

BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, kRound);
  check_finite("mul");
  return *this;
}

BigReal& BigReal::operator/=(long rhs) {
  if (rhs == 0) throw Error(ErrorKind::NonFinite, "division by zero");
  mpfr_div_si(value_, value_, rhs, kRound);
  check_finite("div");
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal r(bits());
  mpfr_neg(r.value_, value_, kRound);
  return r;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(wider(a, b));
  mpfr_add(r.value_, a.value_, b.value_, kRound);
  r.check_finite("add");
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(wider(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, kRound);
  r.check_finite("sub");
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r(wider(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, kRound);
  r.check_finite("mul");
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  require_nonzero(b);
  BigReal r(wider(a, b));
  mpfr_div(r.value_, a.value_, b.value_, kRound);
  r.check_finite("div");
  return r;
}

BigReal operator+(const BigReal& a, long b) { BigReal r(a); return r += b; }
BigReal operator-(const BigReal& a, long b) { BigReal r(a); return r -= b; }
BigReal operator*(const BigReal& a, long b) { BigReal r(a); return r *= b; }
BigReal operator/(const BigReal& a, long b) { BigReal r(a); return r /= b; }
BigReal operator+(long a, const BigReal& b) { BigReal r(b); return r += a; }
BigReal operator*(long a, const BigReal& b) { BigReal r(b); return r *= a; }

BigReal operator-(long a, const BigReal& b) {
  BigReal r(b.bits());
  mpfr_si_sub(r.value_, a, b.value_, kRound);
  r.check_finite("sub");
  return r;
}

BigReal operator/(long a, const BigReal& b) {
  require_nonzero(b);
  BigReal r(b.bits());
  mpfr_si_div(r.value_, a, b.value_, kRound);
  r.check_finite("div");
  return r;
}

bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }

std::partial_ordering operator<=>(const BigReal& a, long b) {
  int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

BigReal abs(const BigReal& x) {
  BigReal r(x.bits());
  mpfr_abs(r.value_, x.value_, kRound);
  return r;
}

BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0) throw Error(ErrorKind::NonFinite, "sqrt of a negative number");
  BigReal r(x.bits());
  mpfr_sqrt(r.value_, x.value_, kRound);
  return r;
}

BigReal log(const BigReal& x) {
  if (x.sign() <= 0) throw Error(ErrorKind::NonFinite, "log of a non-positive number");
  BigReal r(x.bits());
  mpfr_log(r.value_, x.value_, kRound);
  return r;
}

BigReal exp(const BigReal& x) {
  BigReal r(x.bits());
  mpfr_exp(r.value_, x.value_, kRound);
  r.check_finite("exp");
  return r;
}

BigReal pow(const BigReal& x, unsigned long n) {
  BigReal r(x.bits());
  mpfr_pow_ui(r.value_, x.value_, n, kRound);
  r.check_finite("pow");
  return r;
}

BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

}  // namespace hypopq
