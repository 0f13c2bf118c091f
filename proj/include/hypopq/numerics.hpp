#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hypopq/big_real.hpp"
#include "hypopq/rational.hpp"

namespace hypopq {

/// Working precision shared by every numeric operation.
struct PrecisionCtx {
  BigReal::Bits bits = 256;
  BigReal::Bits guard_bits = 16;
  std::size_t series_max_terms = 100000;

  /// Throws InvalidParam unless bits >= 24, guard_bits >= 0, series_max_terms >= 1.
  void validate() const;

  PrecisionCtx with_bits(BigReal::Bits b) const;
  BigReal::Bits working_bits() const { return bits + guard_bits; }

  BigReal zero() const { return BigReal(0, bits); }
  BigReal real(long v) const { return BigReal(v, bits); }
  BigReal real(const Rational& q) const { return BigReal::from_rational(q, bits); }
  /// 2^-(bits - guard_bits): the relative size below which a quantity is
  /// indistinguishable from rounding noise.
  BigReal noise_floor() const { return BigReal::pow2(-(bits - guard_bits), bits); }
};

/// Decimal digits d map to ceil(d * log2(10)) significand bits.
BigReal::Bits bits_for_digits(int digits);

using SeriesTerm = std::function<BigReal(std::size_t k)>;
using SeriesTerms = std::function<void(std::size_t k, std::span<BigReal> out)>;

/// Sums term(0) + term(1) + ... at bits + guard_bits and rounds the total to
/// bits. Stops after the first index at which |term(k)| < 2^-(bits+guard) *
/// |partial sum| has held for 3 consecutive k (exact zeros count as small).
/// Throws NonConvergent when series_max_terms is reached first.
BigReal sum_series(const SeriesTerm& term, const PrecisionCtx& ctx);

/// Several series sharing one index loop; terms(k, out) fills out[i] with the
/// k-th term of series i. The stopping rule must hold for every component.
std::vector<BigReal> sum_series(std::size_t count, const SeriesTerms& terms, const PrecisionCtx& ctx);

enum class StencilDomain {
  Real,
  /// Nodes must stay inside (0, 1), as for functions of the weight parameter c.
  UnitInterval,
};

/// The five nodes c0 + j*h, j = -2..2. Throws StepTooSmall if h < 2^-(bits/2)
/// and DomainExceeded if a node leaves the domain.
std::array<BigReal, 5> stencil_nodes(const BigReal& c0, const BigReal& h, const PrecisionCtx& ctx,
                                     StencilDomain domain = StencilDomain::Real);

/// Five-point central differences, exact on polynomials of degree <= 4:
///   order 1: (-f2 + 8 f1 - 8 f-1 + f-2) / (12 h)
///   order 2: (-f2 + 16 f1 - 30 f0 + 16 f-1 - f-2) / (12 h^2)
/// values[j] is f at node j - 2.
BigReal stencil_derivative(std::span<const BigReal, 5> values, const BigReal& h, int order);

BigReal central_derivative(const std::function<BigReal(const BigReal&)>& f, const BigReal& c0,
                           const BigReal& h, int order, const PrecisionCtx& ctx,
                           StencilDomain domain = StencilDomain::Real);

/// 2^-(bits/4), balancing stencil truncation against cancellation.
BigReal default_step(const PrecisionCtx& ctx);

/// Accumulates the signed additive terms of an identity that should vanish.
/// residual() is |sum| / max|term|, or 0 when every term is exactly 0.
class TermBalance {
public:
  explicit TermBalance(const PrecisionCtx& ctx) : sum_(ctx.zero()), scale_(ctx.zero()) {}

  TermBalance& add(const BigReal& term);
  TermBalance& sub(const BigReal& term) { return add(-term); }
  /// Adds a product whose size is judged by the product of its factors'
  /// largest terms, so a product of cancelling factors is not its own scale.
  TermBalance& add_product(const BigReal& value, const BigReal& scale);

  const BigReal& sum() const { return sum_; }
  const BigReal& scale() const { return scale_; }
  BigReal residual() const;

private:
  BigReal sum_;
  BigReal scale_;
};

/// Largest magnitude among the terms; the natural scale of their sum.
BigReal max_abs(std::initializer_list<BigReal> terms);

}  // namespace hypopq
