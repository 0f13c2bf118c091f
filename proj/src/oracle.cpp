#include "hypopq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "hypopq/error.hpp"

namespace hypopq {

BigReal hankel_det(const MomentTable& table, std::size_t n, bool starred, const PrecisionCtx& ctx) {
  if (n == 0) return ctx.real(1);
  const std::size_t needed = starred ? 2 * n : 2 * n - 1;
  if (table.moments.size() < needed) {
    throw Error(ErrorKind::InvalidParam, "moment table too short for Hankel block of size " + std::to_string(n));
  }
  std::vector<std::vector<BigReal>> a(n, std::vector<BigReal>(n));
  // scale[i][j]: largest magnitude that has entered a[i][j]; a pivot small
  // against its own scale has cancelled away every significant bit.
  std::vector<std::vector<BigReal>> scale(n, std::vector<BigReal>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t idx = i + j + ((starred && j + 1 == n) ? 1 : 0);
      a[i][j] = table.moments[idx].rounded(ctx.bits);
      scale[i][j] = abs(a[i][j]);
    }
  }

  const BigReal floor = ctx.noise_floor();
  BigReal det = ctx.real(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    }
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(scale[piv], scale[col]);
      det = -det;
    }
    if (abs(a[col][col]) <= floor * scale[col][col]) {
      throw Error(ErrorKind::SingularToPrecision,
                  "Hankel block of size " + std::to_string(n) + " is singular to working precision (" +
                      std::to_string(ctx.bits) + " bits); raise the precision");
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      BigReal f = a[r][col] / a[col][col];
      for (std::size_t j = col + 1; j < n; ++j) {
        BigReal t = f * a[col][j];
        BigReal m = abs(t);
        if (m > scale[r][j]) scale[r][j] = m;
        a[r][j] -= t;
      }
    }
  }
  return det;
}

namespace {

struct HankelPass {
  std::vector<BigReal> a2;
  std::vector<BigReal> b;
  BigReal m0;
};

HankelPass hankel_pass(const Params& eff, std::size_t N, const PrecisionCtx& ctx) {
  MomentTable table = moment_table(eff, 2 * N + 2, ctx);
  std::vector<BigReal> delta(N + 2);
  std::vector<BigReal> starred(N + 2);
  delta[0] = ctx.real(1);
  starred[0] = ctx.zero();
  for (std::size_t n = 1; n <= N + 1; ++n) {
    delta[n] = hankel_det(table, n, false, ctx);
    if (delta[n].sign() <= 0) {
      throw Error(ErrorKind::SingularToPrecision,
                  "Hankel determinant " + std::to_string(n) + " is not positive at " + std::to_string(ctx.bits) +
                      " bits; raise the precision");
    }
    starred[n] = hankel_det(table, n, true, ctx);
  }
  HankelPass out{std::vector<BigReal>(N + 1), std::vector<BigReal>(N + 1), table.moments[0]};
  out.a2[0] = ctx.zero();
  for (std::size_t n = 0; n <= N; ++n) {
    if (n >= 1) out.a2[n] = delta[n + 1] * delta[n - 1] / (delta[n] * delta[n]);
    out.b[n] = starred[n + 1] / delta[n + 1] - starred[n] / delta[n];
  }
  return out;
}

/// Decimal digits on which lo and hi agree.
double agreement(const BigReal& lo, const BigReal& hi, BigReal::Bits hi_bits) {
  const double full = static_cast<double>(hi_bits) * std::log10(2.0);
  BigReal diff = abs(lo.rounded(hi_bits) - hi);
  if (diff.is_zero()) return full;
  BigReal rel = hi.is_zero() ? diff : diff / abs(hi);
  double d = -std::log10(rel.to_double());
  if (!std::isfinite(d)) d = -static_cast<double>(rel.exponent2()) * std::log10(2.0);
  return std::min(d, full);
}

}  // namespace

CoeffSeq coeffs_oracle(const Params& params, std::size_t N, const PrecisionCtx& ctx) {
  ctx.validate();
  Params eff = standard_equivalent(params);
  const PrecisionCtx hi_ctx = ctx.with_bits(2 * ctx.bits);
  HankelPass hi = [&] {
    try {
      return hankel_pass(eff, N, hi_ctx);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularToPrecision) throw;
      throw Error(ErrorKind::PrecisionExhausted, std::string(e.what()) + " (N = " + std::to_string(N) + ")");
    }
  }();

  double digits = std::numeric_limits<double>::infinity();
  try {
    HankelPass lo = hankel_pass(eff, N, ctx);
    for (std::size_t n = 0; n <= N; ++n) {
      if (n >= 1) digits = std::min(digits, agreement(lo.a2[n], hi.a2[n], hi_ctx.bits));
      digits = std::min(digits, agreement(lo.b[n], hi.b[n], hi_ctx.bits));
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularToPrecision) throw;
    digits = 0.0;
  }
  if (digits < 10.0) {
    throw Error(ErrorKind::PrecisionExhausted,
                "Hankel quotients at " + std::to_string(ctx.bits) + " and " + std::to_string(hi_ctx.bits) +
                    " bits agree to fewer than 10 digits for N = " + std::to_string(N) + "; raise the precision");
  }

  CoeffSeq out{params, {}, {}, ctx, hi.m0.rounded(ctx.bits), digits};
  out.a2.reserve(N + 1);
  out.b.reserve(N + 1);
  const BigReal shift = params.lattice == Lattice::Shifted ? 1L - ctx.real(params.gamma) : ctx.zero();
  for (std::size_t n = 0; n <= N; ++n) {
    out.a2.push_back(n == 0 ? ctx.zero() : hi.a2[n].rounded(ctx.bits));
    out.b.push_back(hi.b[n].rounded(ctx.bits) + shift);
  }
  return out;
}

CoeffSeq meixner_coeffs(const Params& params, std::size_t N, const PrecisionCtx& ctx) {
  if (!params.is_meixner() || params.lattice != Lattice::Standard) {
    throw Error(ErrorKind::InvalidParam, "Meixner closed forms need alpha == gamma or beta == gamma on the standard lattice");
  }
  const BigReal other = ctx.real(params.alpha == params.gamma ? params.beta : params.alpha);
  const BigReal c = ctx.real(params.c);
  const BigReal one_minus_c = 1L - c;
  CoeffSeq out{params, {}, {}, ctx, std::nullopt, std::nullopt};
  for (std::size_t n = 0; n <= N; ++n) {
    const long nn = static_cast<long>(n);
    out.a2.push_back(n == 0 ? ctx.zero() : (other + (nn - 1)) * nn * c / (one_minus_c * one_minus_c));
    out.b.push_back(((other + nn) * c + nn) / one_minus_c);
  }
  return out;
}

LadderSeq ladder_sequences(const Params& params, const CoeffSeq& coeffs, const PrecisionCtx& ctx) {
  if (params.alpha == params.beta) {
    throw Error(ErrorKind::InvalidParam, "ladder sequences need alpha != beta; use the x/y variables instead");
  }
  const ParamReals p = reals(params, ctx);
  const BigReal diff = p.alpha - p.beta;
  if (diff.is_zero()) throw Error(ErrorKind::InvalidParam, "alpha - beta underflows the working precision");
  const BigReal ratio = (1L - p.c) / p.c;
  const BigReal constant = (p.alpha + p.beta - p.gamma - 1L) / p.c;

  LadderSeq out;
  BigReal partial_b = ctx.zero();
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    const long nn = static_cast<long>(n);
    BigReal common = constant - ratio * coeffs.b[n] + (2 * nn + 1);
    out.u.push_back((common + (nn + 1L - p.beta) * ratio) / diff);
    out.v.push_back(-(common + (nn + 1L - p.alpha) * ratio) / diff);
    BigReal rcommon = ctx.real(nn * (nn - 1) / 2) - ratio * coeffs.a2[n] + partial_b;
    out.r.push_back((rcommon + p.beta * nn) / diff);
    out.s.push_back(-(rcommon + p.alpha * nn) / diff);
    partial_b += coeffs.b[n];
  }
  return out;
}

CoeffSeq coeffs_from_ladder(const Params& params, const LadderSeq& ladder, const PrecisionCtx& ctx) {
  const ParamReals p = reals(params, ctx);
  const BigReal diff = p.alpha - p.beta;
  const BigReal q = p.c / (1L - p.c);
  CoeffSeq out{params, {}, {}, ctx, std::nullopt, std::nullopt};
  BigReal partial_u = ctx.zero();
  for (std::size_t n = 0; n < ladder.size(); ++n) {
    const long nn = static_cast<long>(n);
    out.b.push_back((p.alpha - p.gamma + nn + (p.beta + nn) * p.c) / (1L - p.c) - diff * q * ladder.u[n]);
    if (n == 0) {
      out.a2.push_back(ctx.zero());
    } else {
      BigReal lead = (p.alpha + p.beta - p.gamma + (nn - 1)) * nn * p.c / ((1L - p.c) * (1L - p.c));
      out.a2.push_back(lead - diff * q * (q * partial_u + ladder.r[n]));
    }
    partial_u += ladder.u[n];
  }
  return out;
}

ResidualReport ladder_residuals(const Params& params, const CoeffSeq& coeffs, const BigReal& tolerance,
                                const PrecisionCtx& ctx) {
  const LadderSeq lad = ladder_sequences(params, coeffs, ctx);
  const CoeffSeq back = coeffs_from_ladder(params, lad, ctx);
  const ParamReals p = reals(params, ctx);
  const BigReal ratio = (1L - p.c) / p.c;
  ResidualReport report;
  BigReal partial_b = ctx.zero();
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    const long nn = static_cast<long>(n);
    report.add("uv_sum", n, TermBalance(ctx).add(lad.u[n]).add(lad.v[n]).sub(ratio).residual(), tolerance);
    report.add("rs_sum", n, TermBalance(ctx).add(lad.r[n]).add(lad.s[n]).add(ctx.real(nn)).residual(), tolerance);

    TermBalance uvw(ctx);
    uvw.add(p.alpha * lad.u[n]).add(p.beta * lad.v[n]).sub(ctx.real(2 * nn + 1)).add(ratio * coeffs.b[n]);
    uvw.sub((p.alpha + p.beta - p.gamma - 1L) / p.c).sub(ratio * (nn + 1));
    report.add("uv_weighted", n, uvw.residual(), tolerance);

    TermBalance rsw(ctx);
    rsw.add(p.alpha * lad.r[n]).add(p.beta * lad.s[n]).sub(ctx.real(nn * (nn - 1) / 2));
    rsw.add(ratio * coeffs.a2[n]).sub(partial_b);
    report.add("rs_weighted", n, rsw.residual(), tolerance);

    report.add("ladder_b", n, TermBalance(ctx).add(back.b[n]).sub(coeffs.b[n]).residual(), tolerance);
    report.add("ladder_a2", n, TermBalance(ctx).add(back.a2[n]).sub(coeffs.a2[n]).residual(), tolerance);
    partial_b += coeffs.b[n];
  }
  return report;
}

XYSeq xy_from_coeffs(const Params& params, const CoeffSeq& coeffs, const PrecisionCtx& ctx) {
  const ParamReals p = reals(params, ctx);
  const BigReal one_minus_c = 1L - p.c;
  const BigReal ratio = one_minus_c / p.c;
  XYSeq out;
  BigReal S = ctx.zero();
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    const long nn = static_cast<long>(n);
    BigReal x = coeffs.b[n] - ((p.alpha + p.beta + nn) * p.c + nn - p.gamma) / one_minus_c;
    BigReal y = n == 0 ? ctx.zero()
                       : ratio * coeffs.a2[n] - S - (p.alpha + p.beta - p.gamma + (nn - 1)) * nn / one_minus_c;
    out.S.push_back(S);
    S += x;
    out.x.push_back(std::move(x));
    out.y.push_back(std::move(y));
  }
  return out;
}

CoeffSeq coeffs_from_xy(const Params& params, const XYSeq& xy, const PrecisionCtx& ctx) {
  const ParamReals p = reals(params, ctx);
  const BigReal one_minus_c = 1L - p.c;
  const BigReal q = p.c / one_minus_c;
  CoeffSeq out{params, {}, {}, ctx, std::nullopt, std::nullopt};
  for (std::size_t n = 0; n < xy.size(); ++n) {
    const long nn = static_cast<long>(n);
    out.b.push_back(xy.x[n] + ((p.alpha + p.beta + nn) * p.c + nn - p.gamma) / one_minus_c);
    if (n == 0) {
      out.a2.push_back(ctx.zero());
    } else {
      out.a2.push_back(q * (xy.y[n] + xy.S[n] + (p.alpha + p.beta - p.gamma + (nn - 1)) * nn / one_minus_c));
    }
  }
  return out;
}

std::vector<BigReal> eval_orthonormal(const CoeffSeq& coeffs, const BigReal& m0, const BigReal& x,
                                      std::size_t nmax, const PrecisionCtx& ctx) {
  if (nmax >= coeffs.size()) {
    throw Error(ErrorKind::InvalidCoeffs, "coefficients end before degree " + std::to_string(nmax));
  }
  if (m0.sign() <= 0) throw Error(ErrorKind::InvalidCoeffs, "measure mass m0 must be positive");
  std::vector<BigReal> a(nmax + 1, ctx.zero());
  for (std::size_t n = 1; n <= nmax; ++n) {
    if (coeffs.a2[n].sign() <= 0) {
      throw Error(ErrorKind::InvalidCoeffs, "a_" + std::to_string(n) + "^2 is not positive");
    }
    a[n] = sqrt(coeffs.a2[n].rounded(ctx.bits));
  }
  std::vector<BigReal> p;
  p.reserve(nmax + 1);
  p.push_back(1L / sqrt(m0.rounded(ctx.bits)));
  if (nmax >= 1) p.push_back((x - coeffs.b[0]) * p[0] / a[1]);
  for (std::size_t n = 1; n < nmax; ++n) {
    p.push_back(((x - coeffs.b[n]) * p[n] - a[n] * p[n - 1]) / a[n + 1]);
  }
  return p;
}

BigReal structure_residual(const Params& params, const CoeffSeq& coeffs, const XYSeq& xy, std::size_t n,
                           const BigReal& x, const PrecisionCtx& ctx) {
  if (n == 0) throw Error(ErrorKind::InvalidParam, "structure relation needs n >= 1");
  if (n >= xy.size()) throw Error(ErrorKind::InvalidCoeffs, "x/y sequences end before index " + std::to_string(n));
  const ParamReals p = reals(params, ctx);
  const BigReal den = (x + p.alpha) * (x + p.beta);
  const BigReal scale = max_abs({x, p.alpha, ctx.real(1)}) * max_abs({x, p.beta, ctx.real(1)});
  if (abs(den) <= ctx.noise_floor() * scale) {
    throw Error(ErrorKind::PoleHit, "structure relation has a pole at x = " + x.to_string(12));
  }
  const BigReal m0 = coeffs.m0 ? *coeffs.m0 : moment(params, 0, ctx);
  const auto at_x = eval_orthonormal(coeffs, m0, x, n, ctx);
  const auto at_x1 = eval_orthonormal(coeffs, m0, x + 1L, n, ctx);
  const BigReal a_n = sqrt(coeffs.a2[n]);
  const BigReal A = a_n * ((1L - p.c) / p.c) * (x + xy.x[n]) / den;
  const BigReal B = (xy.y[n] - x * static_cast<long>(n)) / den;
  return at_x1[n] - at_x[n] - A * at_x[n - 1] + B * at_x[n];
}

}  // namespace hypopq
