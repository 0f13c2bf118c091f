#include "hypopq/asymptotics.hpp"

#include <algorithm>

#include "hypopq/dpainleve.hpp"
#include "hypopq/error.hpp"

namespace hypopq {

LimitTargets limit_targets(const Params& params, const PrecisionCtx& ctx) {
  const ParamReals p = reals(params, ctx);
  if (params.lattice == Lattice::Shifted) {
    return {ctx.real(1), (1L - p.alpha) * (1L - p.beta), ctx.real(1)};
  }
  return {p.gamma, (p.gamma - p.alpha) * (p.gamma - p.beta), p.gamma};
}

namespace {

void fill_gaps(StudyReport& report, const XYSeq& xy, const LimitTargets& t) {
  if (xy.size() <= report.N) return;
  const std::size_t N = report.N;
  report.x_limit_gap = abs(xy.x[N] - t.x);
  report.y_limit_gap = abs(xy.y[N] + t.slope * static_cast<long>(N) - t.y);
}

BigReal relative_gap(const BigReal& v, const BigReal& ref) {
  const BigReal d = abs(v - ref);
  if (ref.is_zero()) return d;
  return d / abs(ref);
}

}  // namespace

StudyReport limit_report(const Params& params, std::size_t N, const PrecisionCtx& ctx, BigReal::Bits max_bits) {
  params.validate();
  ctx.validate();
  const BigReal agree = BigReal::parse("1e-10", ctx.bits);
  PrecisionCtx lo = ctx;
  std::string last_issue;
  while (lo.bits <= max_bits) {
    const IterateResult a = iterate(params, N, lo);
    if (a.closed_form) {
      StudyReport report{params, lo.bits, std::nullopt, N, {}, {}, {}, {}, "closed form"};
      fill_gaps(report, a.xy, limit_targets(params, lo));
      return report;
    }
    const PrecisionCtx hi = lo.with_bits(lo.bits * 2);
    if (a.complete()) {
      const IterateResult b = iterate(params, N, hi);
      if (b.complete() && relative_gap(a.xy.x[N], b.xy.x[N]) < agree &&
          relative_gap(a.xy.y[N], b.xy.y[N]) < agree) {
        StudyReport report{params, lo.bits, std::nullopt, N, {}, {}, {}, {}, {}};
        fill_gaps(report, a.xy, limit_targets(params, lo));
        if (lo.bits != ctx.bits) report.notes = "precision escalated to " + std::to_string(lo.bits) + " bits";
        return report;
      }
      last_issue = b.complete() ? "runs at " + std::to_string(lo.bits) + " and " + std::to_string(hi.bits) +
                                      " bits disagree at n=" + std::to_string(N)
                                : b.failure;
    } else {
      last_issue = a.failure;
    }
    lo = hi;
  }
  throw Error(ErrorKind::PrecisionExhausted,
              "no stable run to n=" + std::to_string(N) + " within " + std::to_string(max_bits) + " bits: " + last_issue);
}

std::vector<StudyReport> perturbation_study(const Params& params, const std::vector<BigReal>& deltas, std::size_t N,
                                            const PrecisionCtx& ctx, const std::optional<BigReal>& base_x0) {
  params.validate();
  ctx.validate();
  const LimitTargets targets = limit_targets(params, ctx);
  InitialXY seed = initial_xy(params, ctx);
  if (base_x0) seed.x0 = base_x0->rounded(ctx.bits);
  const IterateResult base = iterate(params, N, ctx, seed);
  if (!base.complete()) {
    throw Error(ErrorKind::SingularStep, "unperturbed run failed: " + base.failure);
  }

  std::vector<StudyReport> out;
  for (const BigReal& delta : deltas) {
    StudyReport report{params, ctx.bits, std::nullopt, N, {}, {}, {}, delta, {}};
    const IterateResult run = iterate(params, N, ctx, InitialXY{seed.x0 + delta, seed.y0});
    for (std::size_t n = 0; n < run.xy.size(); ++n) {
      const BigReal base_gap = abs(base.xy.x[n] - targets.x);
      if (abs(run.xy.x[n] - targets.x) > base_gap * 10L) {
        report.divergence_index = n;
        break;
      }
    }
    if (!run.complete()) {
      if (!report.divergence_index) report.divergence_index = run.failed_at;
      report.notes = "singular step at n=" + std::to_string(*run.failed_at) + ": " + run.failure;
    }
    fill_gaps(report, run.xy, targets);
    out.push_back(std::move(report));
  }
  return out;
}

std::vector<StudyReport> precision_study(const Params& params, const std::vector<int>& digit_levels, std::size_t N) {
  params.validate();
  if (digit_levels.empty()) return {};
  for (int d : digit_levels) {
    if (d <= 0) throw Error(ErrorKind::InvalidParam, "digit levels must be positive");
  }
  const int top = *std::max_element(digit_levels.begin(), digit_levels.end());
  PrecisionCtx ref_ctx;
  ref_ctx = ref_ctx.with_bits(std::max<BigReal::Bits>(bits_for_digits(4 * top), 64));
  const IterateResult ref = iterate(params, N, ref_ctx);
  const LimitTargets targets = limit_targets(params, ref_ctx);
  const BigReal threshold = BigReal::parse("1e-3", ref_ctx.bits);

  std::vector<StudyReport> out;
  for (int d : digit_levels) {
    PrecisionCtx ctx;
    ctx = ctx.with_bits(std::max<BigReal::Bits>(bits_for_digits(d), 24));
    StudyReport report{params, ctx.bits, d, N, {}, {}, {}, {}, {}};
    const IterateResult run = iterate(params, N, ctx);
    const std::size_t common = std::min(run.xy.size(), ref.xy.size());
    for (std::size_t n = 0; n < common; ++n) {
      if (relative_gap(run.xy.x[n], ref.xy.x[n]) > threshold || relative_gap(run.xy.y[n], ref.xy.y[n]) > threshold) {
        report.divergence_index = n;
        break;
      }
    }
    if (!run.complete()) {
      if (!report.divergence_index) report.divergence_index = run.failed_at;
      report.notes = "singular step at n=" + std::to_string(*run.failed_at);
    }
    if (!ref.complete()) {
      report.notes += (report.notes.empty() ? "" : "; ") + std::string("reference stopped at n=") +
                      std::to_string(*ref.failed_at);
    }
    fill_gaps(report, run.xy, targets);
    out.push_back(std::move(report));
  }
  return out;
}

}  // namespace hypopq
