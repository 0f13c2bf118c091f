#include "hypopq/toda_sigma.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "hypopq/dpainleve.hpp"
#include "hypopq/error.hpp"

namespace hypopq {

std::string_view to_string(SequenceSource source) {
  return source == SequenceSource::Oracle ? "oracle" : "iterate";
}

SequenceSource parse_source(std::string_view text) {
  if (text == "oracle") return SequenceSource::Oracle;
  if (text == "iterate") return SequenceSource::Iterate;
  throw Error(ErrorKind::InvalidParam, "source must be 'oracle' or 'iterate'");
}

namespace {

struct CacheEntry {
  std::size_t N = 0;
  std::shared_ptr<const NodeSequences> data;
};

std::mutex g_cache_mutex;
std::map<std::string, CacheEntry> g_cache;

NodeSequences compute_sequences(const Params& params, std::size_t N, SequenceSource source,
                                const PrecisionCtx& ctx) {
  if (source == SequenceSource::Oracle) {
    CoeffSeq co = coeffs_oracle(params, N, ctx);
    XYSeq xy = xy_from_coeffs(params, co, ctx);
    return {std::move(co), std::move(xy)};
  }
  IterateResult run = iterate(params, N, ctx);
  if (!run.complete()) throw Error(ErrorKind::SingularStep, run.failure);
  CoeffSeq co = coeffs_from_xy(params, run.xy, ctx);
  return {std::move(co), std::move(run.xy)};
}

}  // namespace

const NodeSequences& sequences_at(const Params& params, std::size_t N, SequenceSource source,
                                  const PrecisionCtx& ctx) {
  const std::string key = params.key() + "|" + std::string(to_string(source)) + "|" + std::to_string(ctx.bits) +
                          "|" + std::to_string(ctx.guard_bits);
  {
    std::lock_guard lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end() && it->second.N >= N) return *it->second.data;
  }
  auto data = std::make_shared<const NodeSequences>(compute_sequences(params, N, source, ctx));
  std::lock_guard lock(g_cache_mutex);
  auto& slot = g_cache[key];
  if (!slot.data || slot.N < N) slot = {N, data};
  return *slot.data;
}

void clear_sequence_cache() {
  std::lock_guard lock(g_cache_mutex);
  g_cache.clear();
}

SigmaParams make_sigma_params(const Params& params, std::size_t n, const PrecisionCtx& ctx) {
  const ParamReals p = reals(params, ctx);
  const long nn = static_cast<long>(n);
  const BigReal apb = p.alpha + p.beta;
  const BigReal amb = p.alpha - p.beta;
  SigmaParams sp;
  sp.n = n;
  sp.K = p.alpha * p.beta - (apb + nn) * (apb + nn) / 4L;
  sp.L = ((apb + p.gamma + 1L) * nn + p.alpha * p.alpha + p.beta * p.beta - apb * (p.gamma + 1L) + p.gamma * 2L) / 4L;
  sp.d1 = (amb + nn) / 2L;
  sp.d2 = (amb - nn) / 2L;
  sp.d3 = (apb + (nn - 2)) / 2L;
  sp.d4 = (apb + nn - p.gamma * 2L) / 2L;
  return sp;
}

namespace {

/// The stencil around params.c; nodes[j] is c + (j-2)h.
struct Stencil {
  std::array<BigReal, 5> nodes;
  BigReal h;
  std::array<Params, 5> params;
};

Stencil make_stencil(const Params& params, const BigReal& h, const PrecisionCtx& ctx) {
  params.validate();
  Stencil s{stencil_nodes(ctx.real(params.c), h, ctx, StencilDomain::UnitInterval), h, {}};
  for (std::size_t j = 0; j < 5; ++j) s.params[j] = params.with_c(s.nodes[j].to_rational());
  return s;
}

template <typename F>
std::array<BigReal, 5> sample(F&& f) {
  std::array<BigReal, 5> out;
  for (std::size_t j = 0; j < 5; ++j) out[j] = f(j);
  return out;
}

BigReal d1(const std::array<BigReal, 5>& v, const Stencil& s) { return stencil_derivative(v, s.h, 1); }
BigReal d2(const std::array<BigReal, 5>& v, const Stencil& s) { return stencil_derivative(v, s.h, 2); }

}  // namespace

ResidualReport toda_residuals(const Params& params, std::size_t n, const BigReal& h, SequenceSource source,
                              const PrecisionCtx& ctx, const BigReal& tolerance) {
  const Stencil st = make_stencil(params, h, ctx);
  std::array<const NodeSequences*, 5> seq{};
  for (std::size_t j = 0; j < 5; ++j) seq[j] = &sequences_at(st.params[j], n + 1, source, ctx);

  auto a2 = [&](std::size_t k) { return sample([&](std::size_t j) { return seq[j]->coeffs.a2[k]; }); };
  auto b = [&](std::size_t k) { return sample([&](std::size_t j) { return seq[j]->coeffs.b[k]; }); };
  auto xs = [&](std::size_t k) { return sample([&](std::size_t j) { return seq[j]->xy.x[k]; }); };
  auto ys = [&](std::size_t k) { return sample([&](std::size_t j) { return seq[j]->xy.y[k]; }); };

  const NodeSequences& mid = *seq[2];
  const ParamReals p = reals(params, ctx);
  const BigReal c = st.nodes[2].rounded(ctx.bits);
  const BigReal one_minus_c = 1L - c;
  const long nn = static_cast<long>(n);

  const BigReal a2_n = mid.coeffs.a2[n];
  const BigReal da2 = d1(a2(n), st);
  const BigReal db = d1(b(n), st);
  const BigReal dx = d1(xs(n), st);
  const BigReal dy = d1(ys(n), st);

  ResidualReport report;
  if (n >= 1) {
    TermBalance t(ctx);
    t.add(c * da2).sub(a2_n * mid.coeffs.b[n]).add(a2_n * mid.coeffs.b[n - 1]);
    report.add("Toda1", n, t.residual(), tolerance);
  }
  {
    TermBalance t(ctx);
    t.add(c * db).sub(mid.coeffs.a2[n + 1]).add(a2_n);
    report.add("Toda2", n, t.residual(), tolerance);
  }
  {
    TermBalance t(ctx);
    t.add(dx).sub(db).add((p.alpha + p.beta - p.gamma + 2 * nn) / (one_minus_c * one_minus_c));
    report.add("xder", n, t.residual(), tolerance);
  }
  {
    TermBalance t(ctx);
    t.add(dy).add((1L + c) / (c * c) * a2_n).sub(one_minus_c / c * da2);
    report.add("yder", n, t.residual(), tolerance);
  }
  {
    TermBalance t(ctx);
    t.add(one_minus_c * dx).sub(mid.xy.y[n + 1]).add(mid.xy.y[n]).sub(mid.xy.x[n]);
    report.add("xToda", n, t.residual(), tolerance);
  }
  {
    TermBalance t(ctx);
    const BigReal q = one_minus_c * one_minus_c / (c * c) * a2_n;
    t.add(one_minus_c * dy).sub(q * mid.xy.x[n]);
    if (n >= 1) t.add(q * mid.xy.x[n - 1]);
    report.add("yToda", n, t.residual(), tolerance);
  }
  return report;
}

ResidualReport toda_aux_residuals(const Params& params, std::size_t n, const BigReal& h, SequenceSource source,
                                  const PrecisionCtx& ctx, const BigReal& tolerance) {
  const Stencil st = make_stencil(params, h, ctx);
  std::array<const NodeSequences*, 5> seq{};
  for (std::size_t j = 0; j < 5; ++j) seq[j] = &sequences_at(st.params[j], n + 1, source, ctx);

  const NodeSequences& mid = *seq[2];
  const ParamReals p = reals(params, ctx);
  const BigReal c = st.nodes[2].rounded(ctx.bits);
  const BigReal one_minus_c = 1L - c;
  const long nn = static_cast<long>(n);

  const auto weighted_S = sample([&](std::size_t j) { return (1L - st.nodes[j]) * seq[j]->xy.S[n]; });
  const auto xs = sample([&](std::size_t j) { return seq[j]->xy.x[n]; });
  const auto ys = sample([&](std::size_t j) { return seq[j]->xy.y[n]; });
  const BigReal x = mid.xy.x[n];
  const BigReal y = mid.xy.y[n];
  const BigReal S = mid.xy.S[n];
  const BigReal dy = d1(ys, st);
  const BigReal dx = d1(xs, st);
  const BigReal ddx = d2(xs, st);

  ResidualReport report;
  report.add("yS", n, TermBalance(ctx).add(y).sub(d1(weighted_S, st)).residual(), tolerance);
  {
    TermBalance t(ctx);
    const BigReal r = one_minus_c / c;
    t.add(r * r * mid.coeffs.a2[n] * x * 2L).sub(one_minus_c * dy);
    t.add(y * nn * (1L + c) / c).add(y * (p.alpha + p.beta)).sub(y * (p.gamma + 1L) / c);
    t.sub((p.alpha * p.beta - p.gamma) * nn / c).sub((p.alpha + p.beta + nn) * r * S);
    report.add("xnyS", n, t.residual(), tolerance);
  }
  {
    TermBalance t(ctx);
    t.add(c * one_minus_c * ddx).add(one_minus_c * x * dx * 2L);
    t.add(((p.alpha + p.beta + (nn - 2)) * c + nn - p.gamma) * dx);
    t.sub(x * x).add((p.alpha + p.beta + nn) * x).sub(p.alpha * p.beta).add(y).add(c * dy * 2L);
    report.add("riccati_n", n, t.residual(), tolerance);
  }
  return report;
}

BigReal sigma_value(const Params& params, std::size_t n, const BigReal& c_eval, SequenceSource source,
                    const PrecisionCtx& ctx) {
  const Params at = params.with_c(c_eval.to_rational());
  at.validate();
  const NodeSequences& seq = sequences_at(at, n, source, ctx);
  const SigmaParams sp = make_sigma_params(params, n, ctx);
  const BigReal c = c_eval.rounded(ctx.bits);
  return (c - 1L) * seq.xy.S[n] + sp.K * c + sp.L;
}

BigReal sigma_pvi_residual(const Params& params, std::size_t n, const BigReal& h, SequenceSource source,
                           const PrecisionCtx& ctx) {
  return sigma_pvi_residual(params, make_sigma_params(params, n, ctx), h, source, ctx);
}

BigReal sigma_pvi_residual(const Params& params, const SigmaParams& sp, const BigReal& h, SequenceSource source,
                           const PrecisionCtx& ctx) {
  if (sp.n == 0) throw Error(ErrorKind::InvalidParam, "sigma equation check needs n >= 1");
  const Stencil st = make_stencil(params, h, ctx);
  const auto sigma = sample([&](std::size_t j) {
    const NodeSequences& seq = sequences_at(st.params[j], sp.n, source, ctx);
    return (st.nodes[j] - 1L) * seq.xy.S[sp.n] + sp.K * st.nodes[j] + sp.L;
  });
  const BigReal c = st.nodes[2].rounded(ctx.bits);
  const BigReal s = sigma[2].rounded(ctx.bits);
  const BigReal s1 = d1(sigma, st).rounded(ctx.bits);
  const BigReal s2 = d2(sigma, st).rounded(ctx.bits);

  const BigReal inner = c * (c - 1L) * s2;
  const BigReal t1 = s1 * inner * inner;
  const BigReal mid = s1 * (s * 2L - (c * 2L - 1L) * s1) + sp.d1 * sp.d2 * sp.d3 * sp.d4;
  const BigReal t2 = mid * mid;
  const BigReal t3 = (s1 + sp.d1 * sp.d1) * (s1 + sp.d2 * sp.d2) * (s1 + sp.d3 * sp.d3) * (s1 + sp.d4 * sp.d4);
  return TermBalance(ctx).add(t1).add(t2).sub(t3).residual();
}

BigReal riccati_constant(const Params& params, const BigReal& h, const PrecisionCtx& ctx) {
  const Stencil st = make_stencil(params, h, ctx);
  const auto x0 = sample([&](std::size_t j) { return initial_xy(st.params[j], ctx).x0; });
  const ParamReals p = reals(params, ctx);
  const BigReal c = st.nodes[2].rounded(ctx.bits);
  const BigReal dx = d1(x0, st);
  const BigReal& x = x0[2];
  return c * (1L - c) * dx + (1L - c) * x * x + ((p.alpha + p.beta) * c - p.gamma - 1L) * x - p.alpha * p.beta * c;
}

}  // namespace hypopq
