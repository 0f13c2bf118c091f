#include "hypopq/rational.hpp"

#include <cctype>
#include <string>

#include "hypopq/error.hpp"

namespace hypopq {

namespace {

[[noreturn]] void reject(std::string_view text) {
  throw Error(ErrorKind::InvalidParam, "cannot parse number '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) reject(whole);
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

long parse_exponent(std::string_view s, std::string_view whole) {
  mpz_class e = parse_integer(s, whole);
  if (!e.fits_slong_p() || abs(e) > 100000) reject(whole);
  return e.get_si();
}

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

}  // namespace

ParsedRational parse_rational(std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  if (t.empty()) reject(text);

  if (auto caret = t.find('^'); caret != std::string_view::npos) {
    if (t.substr(0, caret) != "2") reject(text);
    long e = parse_exponent(t.substr(caret + 1), text);
    Rational q(1);
    if (e >= 0) {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
      q = p;
    } else {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
      q = Rational(mpz_class(1), p);
    }
    return {q, true};
  }

  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(t.substr(0, slash), text);
    mpz_class den = parse_integer(t.substr(slash + 1), text);
    if (den == 0) reject(text);
    Rational q(num, den);
    q.canonicalize();
    return {q, true};
  }

  std::string_view mantissa = t;
  long exponent = 0;
  bool decimal = false;
  if (auto e = t.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = t.substr(0, e);
    exponent = parse_exponent(t.substr(e + 1), text);
    decimal = true;
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot);
    std::string_view fp = mantissa.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || ip.size() + fp.size() == 0) {
      reject(text);
    }
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
    decimal = true;
  } else {
    if (!all_digits(mantissa)) reject(text);
    digits = std::string(mantissa);
  }
  Rational q(mpz_class(digits, 10));
  q *= pow10(exponent);
  if (negative) q = -q;
  q.canonicalize();
  return {q, !decimal};
}

std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace hypopq
