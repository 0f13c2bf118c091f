#include "hypopq/dpainleve.hpp"

#include <string>
#include <utility>

#include "hypopq/error.hpp"

namespace hypopq {

namespace {

constexpr std::size_t kMonitorStride = 10;

struct DP1Factors {
  BigReal value;
  BigReal scale;
};

/// y - ab + (a+b+k) x - x^2 with its largest term.
DP1Factors dp1_factor(const ParamReals& p, long k, const BigReal& x, const BigReal& y) {
  BigReal ab = p.alpha * p.beta;
  BigReal lin = (p.alpha + p.beta + k) * x;
  BigReal sq = x * x;
  return {y - ab + lin - sq, max_abs({y, ab, lin, sq})};
}

/// (x-1)(x-a)(x-b)(x-g)/c with the product of each factor's largest term.
DP1Factors dp1_rhs(const ParamReals& p, const BigReal& x) {
  BigReal value = (x - 1L) * (x - p.alpha) * (x - p.beta) * (x - p.gamma) / p.c;
  BigReal one(1, x.bits());
  BigReal scale = max(abs(x), one) * max(abs(x), p.alpha) * max(abs(x), p.beta) * max(abs(x), p.gamma) / p.c;
  return {value, scale};
}

struct DP2Parts {
  BigReal y_num;    // numerator of Y_m
  BigReal y_scale;
  BigReal den;      // D
  BigReal den_scale;
  BigReal rhs_num;  // product of the four factors
  BigReal rhs_scale;
};

DP2Parts dp2_parts(const ParamReals& p, long m, const BigReal& y) {
  const BigReal ab = p.alpha * p.beta;
  const BigReal e = p.alpha + p.beta - p.gamma + (m - 1);  // m + a + b - g - 1
  const BigReal s = e * m;
  const BigReal lin_coef = s - ab + p.gamma;
  DP2Parts out;
  out.y_num = y * y + y * lin_coef - ab * s;
  out.y_scale = max_abs({y * y, y * lin_coef, ab * s});
  const BigReal slope = e + m;  // 2m + a + b - g - 1
  const BigReal tail = ((p.alpha + p.beta + m) * e - ab + p.gamma) * m;
  out.den = y * slope + tail;
  out.den_scale = max_abs({y * slope, tail});

  const BigReal f1 = y + p.alpha * m;
  const BigReal f2 = y + p.beta * m;
  const BigReal g3 = (p.gamma - p.alpha) * (p.gamma - p.beta);
  const BigReal f3 = y + p.gamma * m - g3;
  const BigReal g4 = (1L - p.alpha) * (1L - p.beta);
  const BigReal f4 = y + m - g4;
  out.rhs_num = f1 * f2 * f3 * f4;
  const BigReal ay = abs(y);
  out.rhs_scale = max(ay, abs(p.alpha * m)) * max(ay, abs(p.beta * m)) *
                  max_abs({y, p.gamma * m, g3}) * max_abs({y, BigReal(m, y.bits()), g4});
  return out;
}

BigReal ratio_of(const ParamReals& p) { return (1L - p.c) / p.c; }

}  // namespace

BigReal default_residual_tolerance(const PrecisionCtx& ctx) { return BigReal::pow2(-(ctx.bits / 2), ctx.bits); }

BigReal dp1_step(const Params& params, std::size_t n, const BigReal& x_n, const BigReal& y_n,
                 const PrecisionCtx& ctx) {
  const ParamReals p = reals(params, ctx);
  const long nn = static_cast<long>(n);
  const DP1Factors left = dp1_factor(p, nn, x_n, y_n);
  if (abs(left.value) <= ctx.noise_floor() * left.scale) {
    std::string msg = "dP1 step singular at n = " + std::to_string(n) +
                      ": y_n - alpha*beta + (alpha+beta+n) x_n - x_n^2 vanishes";
    if (params.is_meixner()) msg += " (Meixner family: x_n = gamma, y_n = -n gamma makes it vanish identically)";
    throw Error(ErrorKind::SingularStep, msg);
  }
  const DP1Factors rhs = dp1_rhs(p, x_n);
  return rhs.value / left.value + p.alpha * p.beta - (p.alpha + p.beta + (nn + 1)) * x_n + x_n * x_n;
}

BigReal dp2_step(const Params& params, std::size_t m, const BigReal& x_prev, const BigReal& y_m,
                 const PrecisionCtx& ctx) {
  if (m == 0) throw Error(ErrorKind::InvalidParam, "dP2 step needs m >= 1");
  const ParamReals p = reals(params, ctx);
  const DP2Parts parts = dp2_parts(p, static_cast<long>(m), y_m);
  const BigReal floor = ctx.noise_floor();
  if (abs(parts.den) <= floor * parts.den_scale) {
    throw Error(ErrorKind::SingularStep,
                "dP2 step singular at m = " + std::to_string(m) + ": the denominator of Y_m vanishes");
  }
  const BigReal Y = parts.y_num / parts.den;
  const BigReal shifted = x_prev + Y;
  if (abs(shifted) <= floor * max_abs({x_prev, Y})) {
    throw Error(ErrorKind::SingularStep,
                "dP2 step singular at m = " + std::to_string(m) + ": x_{m-1} + Y_m vanishes");
  }
  return parts.rhs_num / (parts.den * parts.den) / shifted - Y;
}

namespace {

/// Residuals of the coefficient identities at one index; nullopt when the
/// sequences do not reach far enough.
std::optional<BigReal> identity_at(const std::string& name, std::size_t n, const ParamReals& p, const XYSeq& xy,
                                   const CoeffSeq& co, const PrecisionCtx& ctx) {
  const std::size_t size = std::min(xy.size(), co.size());
  const long nn = static_cast<long>(n);
  const BigReal r = ratio_of(p);
  const BigReal ab = p.alpha * p.beta;
  TermBalance t(ctx);
  if (name == "yyx") {
    if (n + 1 >= size) return std::nullopt;
    const BigReal S_next = xy.S[n] + xy.x[n];
    t.add(xy.y[n + 1]).add(xy.y[n]).add(r * co.b[n] * xy.x[n]).sub(ab).add(p.gamma / p.c).sub(r * S_next);
  } else if (name == "difadify") {
    if (n + 1 >= size) return std::nullopt;
    t.add(r * co.a2[n + 1]).sub(r * co.a2[n]).sub(xy.y[n + 1]).add(xy.y[n]).sub(co.b[n]);
    t.sub(p.alpha).sub(p.beta).sub(ctx.real(nn));
  } else if (name == "difaxdify") {
    if (n + 1 >= size) return std::nullopt;
    t.add(r * co.a2[n + 1] * xy.x[n + 1]);
    if (n >= 1) t.sub(r * co.a2[n] * xy.x[n - 1]);
    t.add(co.b[n] * xy.y[n + 1]).sub(co.b[n] * xy.y[n]).sub(ab).add(xy.y[n]);
  } else if (name == "xxy") {
    if (n == 0 || n >= size) return std::nullopt;
    t.add(r * r * co.a2[n] * xy.x[n] * xy.x[n - 1]);
    t.sub(xy.y[n] * xy.y[n]).add(ab * xy.y[n]).sub(p.gamma / p.c * xy.y[n]);
    t.add(r * xy.y[n] * xy.S[n]).sub(r * ab * xy.S[n]);
  } else if (name == "xxyy") {
    if (n == 0 || n >= size) return std::nullopt;
    t.add(r * r * co.a2[n] * xy.x[n]).add(r * r * co.a2[n] * xy.x[n - 1]);
    t.add(xy.y[n] * nn * (1L + p.c) / p.c).add(xy.y[n] * (p.alpha + p.beta)).sub(xy.y[n] * (p.gamma + 1L) / p.c);
    t.sub((ab - p.gamma) * nn / p.c).sub((p.alpha + p.beta + nn) * r * xy.S[n]);
  } else {
    throw Error(ErrorKind::InvalidParam, "unknown identity " + name);
  }
  return t.residual();
}

const char* const kExtended[] = {"yyx", "difadify", "difaxdify", "xxy", "xxyy"};

BigReal dp1_residual(const ParamReals& p, std::size_t n, const XYSeq& xy, const PrecisionCtx& ctx) {
  const long nn = static_cast<long>(n);
  const DP1Factors left = dp1_factor(p, nn, xy.x[n], xy.y[n]);
  const DP1Factors right = dp1_factor(p, nn + 1, xy.x[n], xy.y[n + 1]);
  const DP1Factors rhs = dp1_rhs(p, xy.x[n]);
  TermBalance t(ctx);
  t.add_product(left.value * right.value, left.scale * right.scale);
  t.add_product(-rhs.value, rhs.scale);
  return t.residual();
}

BigReal dp2_residual(const ParamReals& p, std::size_t m, const XYSeq& xy, const PrecisionCtx& ctx) {
  const DP2Parts parts = dp2_parts(p, static_cast<long>(m), xy.y[m]);
  // (x_m D + Ynum)(x_{m-1} D + Ynum) = rhs_num, free of divisions.
  const BigReal a = xy.x[m] * parts.den + parts.y_num;
  const BigReal b = xy.x[m - 1] * parts.den + parts.y_num;
  const BigReal sa = max(abs(xy.x[m]) * parts.den_scale, parts.y_scale);
  const BigReal sb = max(abs(xy.x[m - 1]) * parts.den_scale, parts.y_scale);
  TermBalance t(ctx);
  t.add_product(a * b, sa * sb);
  t.add_product(-parts.rhs_num, parts.rhs_scale);
  return t.residual();
}

}  // namespace

ResidualReport dp_residuals(const Params& params, const XYSeq& xy, const CoeffSeq* coeffs, const PrecisionCtx& ctx,
                            const std::optional<BigReal>& tolerance) {
  const ParamReals p = reals(params, ctx);
  const BigReal tol = tolerance ? *tolerance : default_residual_tolerance(ctx);
  ResidualReport report;
  for (std::size_t n = 0; n + 1 < xy.size(); ++n) report.add("dP1", n, dp1_residual(p, n, xy, ctx), tol);
  for (std::size_t m = 1; m < xy.size(); ++m) report.add("dP2", m, dp2_residual(p, m, xy, ctx), tol);
  if (coeffs) {
    for (const char* name : kExtended) {
      for (std::size_t n = 0; n < xy.size(); ++n) {
        if (auto r = identity_at(name, n, p, xy, *coeffs, ctx)) report.add(name, n, *r, tol);
      }
    }
  }
  return report;
}

IterateResult iterate(const Params& params, std::size_t N, const PrecisionCtx& ctx,
                      const std::optional<InitialXY>& seed) {
  ctx.validate();
  params.validate();
  IterateResult out;
  XYSeq& xy = out.xy;

  if (!seed && params.is_meixner() && params.lattice == Lattice::Standard) {
    const BigReal g = ctx.real(params.gamma);
    for (std::size_t n = 0; n <= N; ++n) {
      const long nn = static_cast<long>(n);
      xy.x.push_back(g);
      xy.y.push_back(-(g * nn));
      xy.S.push_back(g * nn);
    }
    out.closed_form = true;
    return out;
  }

  const InitialXY start = seed ? *seed : initial_xy(params, ctx);
  xy.x.push_back(start.x0.rounded(ctx.bits));
  xy.y.push_back(start.y0.rounded(ctx.bits));
  xy.S.push_back(ctx.zero());

  const ParamReals p = reals(params, ctx);
  const BigReal monitor_limit = BigReal::parse("1e-6", ctx.bits);
  for (std::size_t n = 0; n < N; ++n) {
    BigReal y_next;
    BigReal x_next;
    try {
      y_next = dp1_step(params, n, xy.x[n], xy.y[n], ctx);
      x_next = dp2_step(params, n + 1, xy.x[n], y_next, ctx);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularStep && e.kind() != ErrorKind::NonFinite) throw;
      out.failed_at = n + 1;
      out.failure = e.what();
      break;
    }
    xy.S.push_back(xy.S[n] + xy.x[n]);
    xy.x.push_back(std::move(x_next));
    xy.y.push_back(std::move(y_next));

    const std::size_t reached = n + 1;
    if (!out.suspect_at && reached % kMonitorStride == 0) {
      const CoeffSeq co = coeffs_from_xy(params, xy, ctx);
      for (const char* name : kExtended) {
        auto r = identity_at(name, reached - 1, p, xy, co, ctx);
        if (r && *r > monitor_limit) {
          out.suspect_at = reached;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace hypopq
