#include "hypopq/weights.hpp"

#include <algorithm>
#include <cmath>

#include "hypopq/error.hpp"

namespace hypopq {

std::string_view to_string(Lattice lattice) {
  return lattice == Lattice::Standard ? "standard" : "shifted";
}

Lattice parse_lattice(std::string_view text) {
  if (text == "standard") return Lattice::Standard;
  if (text == "shifted") return Lattice::Shifted;
  throw Error(ErrorKind::InvalidParam, "lattice must be 'standard' or 'shifted'");
}

Params Params::parse(std::string_view alpha, std::string_view beta, std::string_view gamma,
                     std::string_view c, Lattice lattice) {
  Params p{parse_rational(alpha).value, parse_rational(beta).value, parse_rational(gamma).value,
           parse_rational(c).value, lattice};
  p.validate();
  return p;
}

void Params::validate() const {
  if (alpha <= 0) throw Error(ErrorKind::InvalidParam, "alpha must be positive");
  if (beta <= 0) throw Error(ErrorKind::InvalidParam, "beta must be positive");
  if (gamma <= 0) throw Error(ErrorKind::InvalidParam, "gamma must be positive");
  if (c <= 0 || c >= 1) throw Error(ErrorKind::InvalidParam, "c must lie in (0,1)");
  if (lattice == Lattice::Shifted) {
    if (alpha == gamma || beta == gamma) {
      throw Error(ErrorKind::InvalidParam,
                  "shifted lattice needs alpha != gamma and beta != gamma (w(-gamma) must vanish)");
    }
    (void)shifted_params(*this);
  }
}

Params Params::swapped() const { return {beta, alpha, gamma, c, lattice}; }

Params Params::with_c(const Rational& new_c) const {
  Params p = *this;
  p.c = new_c;
  p.c.canonicalize();
  return p;
}

std::string Params::key() const {
  return to_string(alpha) + "," + to_string(beta) + "," + to_string(gamma) + "," + to_string(c) + "," +
         std::string(to_string(lattice));
}

ParamReals reals(const Params& params, const PrecisionCtx& ctx) {
  return {ctx.real(params.alpha), ctx.real(params.beta), ctx.real(params.gamma), ctx.real(params.c)};
}

Params shifted_params(const Params& params) {
  Params p{params.alpha - params.gamma + 1, params.beta - params.gamma + 1, 2 - params.gamma, params.c,
           Lattice::Standard};
  if (p.alpha <= 0) throw Error(ErrorKind::InvalidParam, "shifted lattice needs alpha - gamma + 1 > 0");
  if (p.beta <= 0) throw Error(ErrorKind::InvalidParam, "shifted lattice needs beta - gamma + 1 > 0");
  if (p.gamma <= 0) throw Error(ErrorKind::InvalidParam, "shifted lattice needs 2 - gamma > 0");
  return p;
}

Params standard_equivalent(const Params& params) {
  params.validate();
  return params.lattice == Lattice::Shifted ? shifted_params(params) : params;
}

PrecisionCtx series_ctx(const Params& params, std::size_t max_power, const PrecisionCtx& ctx) {
  PrecisionCtx out = ctx;
  if (params.c > Rational(9, 10)) {
    // Terms behave like k^p c^k; the tail is small once k*log2(1/c) clears the
    // target bits plus the polynomial growth.
    double rate = -std::log2(params.c.get_d());
    double bits = static_cast<double>(ctx.working_bits()) + 64.0;
    double peak = static_cast<double>(max_power) / (rate * std::log(2.0)) + 1.0;
    double need = (bits + static_cast<double>(max_power) * std::log2(peak + 1.0)) / rate + 2.0 * peak;
    out.series_max_terms = std::max(out.series_max_terms, static_cast<std::size_t>(4.0 * need) + 1000);
  }
  return out;
}

namespace {

/// Advances w to w_{k+1} given w = w_k.
void next_weight(BigReal& w, std::size_t k, const ParamReals& p) {
  const long kk = static_cast<long>(k);
  w *= (p.alpha + kk) * (p.beta + kk) * p.c;
  w /= (p.gamma + kk) * (kk + 1);
}

}  // namespace

std::vector<BigReal> weight_sequence(const Params& params, std::size_t kmax, const PrecisionCtx& ctx) {
  Params eff = standard_equivalent(params);
  PrecisionCtx wctx = ctx.with_bits(ctx.working_bits());
  ParamReals p = reals(eff, wctx);
  std::vector<BigReal> out;
  out.reserve(kmax + 1);
  BigReal w = wctx.real(1);
  for (std::size_t k = 0; k <= kmax; ++k) {
    out.push_back(w.rounded(ctx.bits));
    next_weight(w, k, p);
  }
  return out;
}

BigReal hyp2f1(const BigReal& a, const BigReal& b, const BigReal& cc, const BigReal& z,
               const PrecisionCtx& ctx) {
  {
    mpq_class q = cc.to_rational();
    if (q.get_den() == 1 && q <= 0) {
      throw Error(ErrorKind::InvalidParam, "2F1 lower parameter must not be a non-positive integer");
    }
  }
  if (z.sign() < 0 || z >= 1L) throw Error(ErrorKind::InvalidParam, "2F1 series needs 0 <= z < 1");
  const BigReal::Bits wb = ctx.working_bits();
  BigReal t(1, wb);
  std::size_t next = 0;
  return sum_series(
      [&](std::size_t k) {
        // Terms are requested in order; t holds term k on return.
        for (; next < k; ++next) {
          const long j = static_cast<long>(next);
          t *= (a + j) * (b + j) * z;
          t /= (cc + j) * (j + 1);
        }
        return t;
      },
      ctx);
}

BigReal moment(const Params& params, std::size_t n, const PrecisionCtx& ctx) {
  Params eff = standard_equivalent(params);
  PrecisionCtx sctx = series_ctx(eff, n, ctx);
  ParamReals p = reals(eff, ctx.with_bits(ctx.working_bits()));
  BigReal w(1, ctx.working_bits());
  std::size_t next = 0;
  return sum_series(
      [&](std::size_t k) {
        for (; next < k; ++next) next_weight(w, next, p);
        return pow(BigReal(static_cast<long>(k), ctx.working_bits()), n) * w;
      },
      sctx);
}

MomentTable moment_table(const Params& params, std::size_t count, const PrecisionCtx& ctx) {
  Params eff = standard_equivalent(params);
  PrecisionCtx sctx = series_ctx(eff, count, ctx);
  const BigReal::Bits wb = ctx.working_bits();
  ParamReals p = reals(eff, ctx.with_bits(wb));
  BigReal w(1, wb);
  std::size_t next = 0;
  auto sums = sum_series(
      count,
      [&](std::size_t k, std::span<BigReal> out) {
        for (; next < k; ++next) next_weight(w, next, p);
        BigReal t = w;
        for (std::size_t i = 0; i < out.size(); ++i) {
          out[i] = t;
          t *= static_cast<long>(k);
        }
      },
      sctx);
  return {params, std::move(sums), ctx};
}

BigReal potential_u(const Params& params, const BigReal& x, const PrecisionCtx& ctx) {
  params.validate();
  ParamReals p = reals(params, ctx);
  BigReal fa = p.alpha + x - 1L;
  BigReal fb = p.beta + x - 1L;
  BigReal den = p.c * fa * fb;
  BigReal scale = p.c * max_abs({p.alpha - 1L, x, ctx.real(1)}) * max_abs({p.beta - 1L, x, ctx.real(1)});
  if (abs(den) <= ctx.noise_floor() * scale) {
    throw Error(ErrorKind::PoleHit, "potential u has a pole at x = " + x.to_string(12));
  }
  return (p.gamma + x - 1L) * x / den - 1L;
}

InitialXY initial_xy(const Params& params, const PrecisionCtx& ctx) {
  Params eff = standard_equivalent(params);
  MomentTable table = moment_table(eff, 2, ctx);
  ParamReals p = reals(eff, ctx);
  BigReal x0 = table.moments[1] / table.moments[0] - ((p.alpha + p.beta) * p.c - p.gamma) / (1L - p.c);
  if (params.lattice == Lattice::Shifted) x0 += ctx.real(params.gamma) - 1L;
  return {x0, ctx.zero()};
}

}  // namespace hypopq
