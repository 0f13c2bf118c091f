#include "hypopq/numerics.hpp"

#include <cmath>
#include <string>

#include "hypopq/error.hpp"

namespace hypopq {

void PrecisionCtx::validate() const {
  if (bits < 24) throw Error(ErrorKind::InvalidParam, "bits must be at least 24");
  if (guard_bits < 0) throw Error(ErrorKind::InvalidParam, "guard_bits must be non-negative");
  if (series_max_terms < 1) throw Error(ErrorKind::InvalidParam, "series_max_terms must be positive");
}

PrecisionCtx PrecisionCtx::with_bits(BigReal::Bits b) const {
  PrecisionCtx c = *this;
  c.bits = b;
  return c;
}

BigReal::Bits bits_for_digits(int digits) {
  return static_cast<BigReal::Bits>(std::ceil(digits * std::log2(10.0)));
}

std::vector<BigReal> sum_series(std::size_t count, const SeriesTerms& terms, const PrecisionCtx& ctx) {
  ctx.validate();
  const BigReal::Bits wb = ctx.working_bits();
  const long threshold = -static_cast<long>(ctx.bits + ctx.guard_bits);
  std::vector<BigReal> sums(count, BigReal(0, wb));
  std::vector<BigReal> term(count, BigReal(0, wb));
  std::vector<int> small_run(count, 0);

  for (std::size_t k = 0; k < ctx.series_max_terms; ++k) {
    terms(k, term);
    bool done = true;
    for (std::size_t i = 0; i < count; ++i) {
      sums[i] += term[i];
      // |t| < 2^threshold * |s|, compared through exponents first.
      bool small = term[i].is_zero();
      if (!small && !sums[i].is_zero()) {
        long gap = term[i].exponent2() - sums[i].exponent2();
        if (gap < threshold) {
          small = true;
        } else if (gap <= threshold + 1) {
          small = abs(term[i]) < abs(sums[i]) * BigReal::pow2(threshold, wb);
        }
      }
      small_run[i] = small ? small_run[i] + 1 : 0;
      if (small_run[i] < 3) done = false;
    }
    if (done) {
      for (auto& s : sums) s = s.rounded(ctx.bits);
      return sums;
    }
  }
  throw Error(ErrorKind::NonConvergent,
              "series did not converge within " + std::to_string(ctx.series_max_terms) + " terms");
}

BigReal sum_series(const SeriesTerm& term, const PrecisionCtx& ctx) {
  auto sums = sum_series(1, [&](std::size_t k, std::span<BigReal> out) { out[0] = term(k); }, ctx);
  return sums.front();
}

std::array<BigReal, 5> stencil_nodes(const BigReal& c0, const BigReal& h, const PrecisionCtx& ctx,
                                     StencilDomain domain) {
  if (h.sign() <= 0 || h < BigReal::pow2(-(ctx.bits / 2), ctx.bits)) {
    throw Error(ErrorKind::StepTooSmall,
                "step " + h.to_string(6) + " is below 2^-(bits/2); cancellation would destroy all digits");
  }
  // Nodes are formed exactly: enough bits for c0 and every multiple of h.
  BigReal::Bits exact_bits = std::max(ctx.bits, c0.bits() + h.bits() + 8);
  std::array<BigReal, 5> nodes;
  for (int j = -2; j <= 2; ++j) {
    BigReal node = c0.rounded(exact_bits) + h.rounded(exact_bits) * static_cast<long>(j);
    if (domain == StencilDomain::UnitInterval && (node <= 0L || node >= 1L)) {
      throw Error(ErrorKind::DomainExceeded,
                  "stencil node " + node.to_string(12) + " leaves the parameter interval (0,1)");
    }
    nodes[static_cast<std::size_t>(j + 2)] = node;
  }
  return nodes;
}

BigReal stencil_derivative(std::span<const BigReal, 5> f, const BigReal& h, int order) {
  if (order == 1) {
    BigReal num = f[0] - f[4] + (f[3] - f[1]) * 8L;
    return num / (h * 12L);
  }
  if (order == 2) {
    BigReal num = (f[3] + f[1]) * 16L - f[4] - f[0] - f[2] * 30L;
    return num / (h * h * 12L);
  }
  throw Error(ErrorKind::InvalidParam, "derivative order must be 1 or 2");
}

BigReal central_derivative(const std::function<BigReal(const BigReal&)>& f, const BigReal& c0,
                           const BigReal& h, int order, const PrecisionCtx& ctx, StencilDomain domain) {
  if (order != 1 && order != 2) throw Error(ErrorKind::InvalidParam, "derivative order must be 1 or 2");
  auto nodes = stencil_nodes(c0, h, ctx, domain);
  std::array<BigReal, 5> values;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (order == 1 && j == 2) {
      values[j] = ctx.zero();
      continue;
    }
    values[j] = f(nodes[j]);
  }
  return stencil_derivative(values, h.rounded(std::max(ctx.bits, h.bits())), order).rounded(ctx.bits);
}

BigReal default_step(const PrecisionCtx& ctx) { return BigReal::pow2(-(ctx.bits / 4), ctx.bits); }

TermBalance& TermBalance::add(const BigReal& term) {
  sum_ += term;
  BigReal a = abs(term);
  if (a > scale_) scale_ = a;
  return *this;
}

TermBalance& TermBalance::add_product(const BigReal& value, const BigReal& scale) {
  sum_ += value;
  BigReal a = max(abs(value), abs(scale));
  if (a > scale_) scale_ = a;
  return *this;
}

BigReal TermBalance::residual() const {
  if (scale_.is_zero()) return abs(sum_);
  return abs(sum_) / scale_;
}

BigReal max_abs(std::initializer_list<BigReal> terms) {
  BigReal m(0, terms.size() ? terms.begin()->bits() : 64);
  for (const auto& t : terms) {
    BigReal a = abs(t);
    if (a > m) m = a;
  }
  return m;
}

}  // namespace hypopq
