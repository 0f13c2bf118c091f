// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hypopq/asymptotics.hpp"
#include "hypopq/dpainleve.hpp"
#include "hypopq/error.hpp"
#include "hypopq/oracle.hpp"
#include "hypopq/toda_sigma.hpp"

using namespace hypopq;

namespace {

constexpr double kMeixnerTol = 1e-30;
constexpr double kMeixnerSeconds = 10;
constexpr double kEquivTol = 1e-10;
constexpr double kEquivSeconds = 120;
constexpr double kIdentityTol = 1e-20;
constexpr double kStructureTol = 1e-15;
constexpr double kTodaTol = 1e-15;
constexpr double kRatioLo = 14;
constexpr double kRatioHi = 18;
constexpr double kSigmaTol = 1e-20;
constexpr double kSigmaSensitivity = 1e-2;
constexpr double kRiccatiTol = 1e-15;
constexpr double kStudySeconds = 300;
constexpr double kXGap = 1e-2;
constexpr double kYGap = 1e-1;
constexpr std::size_t kPerturbLimit = 100;

Params base_set() { return Params::parse("3/2", "3", "1/3", "1/2"); }
Params second_set() { return Params::parse("1", "1", "2", "1/2"); }

PrecisionCtx at_bits(long bits) { return PrecisionCtx{}.with_bits(bits); }

double rel(const BigReal& a, const BigReal& b) {
  BigReal d = abs(a - b);
  if (!b.is_zero()) d = d / abs(b);
  return d.to_double();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome meixner() {
  const auto t0 = Clock::now();
  const PrecisionCtx ctx = at_bits(256);
  double worst = 0;
  for (const char* beta : {"1/2", "2", "5"}) {
    for (const char* c : {"1/4", "1/2", "3/4"}) {
      const Params p = Params::parse("3/2", beta, "3/2", c);
      const CoeffSeq co = coeffs_oracle(p, 50, ctx);
      const CoeffSeq closed = meixner_coeffs(p, 50, ctx);
      const XYSeq xy = xy_from_coeffs(p, co, ctx);
      const BigReal g = ctx.real(p.gamma);
      for (std::size_t n = 0; n <= 50; ++n) {
        worst = std::max(worst, rel(co.b[n], closed.b[n]));
        worst = std::max(worst, n == 0 ? abs(co.a2[n]).to_double() : rel(co.a2[n], closed.a2[n]));
        worst = std::max(worst, rel(xy.x[n], g));
        worst = std::max(worst, n == 0 ? abs(xy.y[n]).to_double() : rel(xy.y[n], -(g * static_cast<long>(n))));
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst < kMeixnerTol && secs < kMeixnerSeconds,
          "max rel err " + sci(worst) + ", " + sci(secs) + " s"};
}

Outcome equivalence() {
  const auto t0 = Clock::now();
  const PrecisionCtx ctx = at_bits(512);
  double worst = 0;
  bool complete = true;
  for (const Params& p : {base_set(), second_set()}) {
    const IterateResult run = iterate(p, 30, ctx);
    complete = complete && run.complete();
    if (!run.complete()) continue;
    const XYSeq ref = xy_from_coeffs(p, coeffs_oracle(p, 30, ctx), ctx);
    for (std::size_t n = 0; n <= 30; ++n) {
      worst = std::max(worst, rel(run.xy.x[n], ref.x[n]));
      worst = std::max(worst, n == 0 ? abs(run.xy.y[n]).to_double() : rel(run.xy.y[n], ref.y[n]));
    }
  }
  const double secs = seconds_since(t0);
  return {complete && worst < kEquivTol && secs < kEquivSeconds,
          "max rel diff " + sci(worst) + ", " + sci(secs) + " s"};
}

Outcome identities() {
  const PrecisionCtx ctx = at_bits(512);
  const BigReal tol = BigReal::parse("1e-20", 512);
  Outcome out;
  for (const Params& p : {base_set(), second_set()}) {
    const CoeffSeq co = coeffs_oracle(p, 30, ctx);
    const XYSeq xy = xy_from_coeffs(p, co, ctx);
    ResidualReport r = dp_residuals(p, xy, &co, ctx, tol);
    std::string skipped;
    if (p.alpha != p.beta) {
      r.merge(ladder_residuals(p, co, tol, ctx));
    } else {
      skipped = " (ladder checks need alpha != beta)";
    }
    const auto w = r.worst();
    out.pass = out.pass && r.passes();
    out.detail += p.key() + ": " + std::to_string(r.names().size()) + " identities, worst " +
                  (w ? w->name + "@" + std::to_string(w->n) + "=" + sci(w->residual.to_double()) : "none") + skipped +
                  "; ";
  }
  return out;
}

Outcome structure() {
  const PrecisionCtx ctx = at_bits(512);
  const Params p = base_set();
  const CoeffSeq co = coeffs_oracle(p, 11, ctx);
  const XYSeq xy = xy_from_coeffs(p, co, ctx);
  double worst = 0;
  for (std::size_t n = 1; n <= 10; ++n) {
    for (long x : {0L, 1L, 2L, 5L}) {
      worst = std::max(worst, abs(structure_residual(p, co, xy, n, ctx.real(x), ctx)).to_double());
    }
  }
  return {worst < kStructureTol, "max residual " + sci(worst)};
}

Outcome toda() {
  const PrecisionCtx ctx = at_bits(512);
  const BigReal h = BigReal::pow2(-40, 512);
  const BigReal h2 = BigReal::pow2(-41, 512);
  const BigReal tol = BigReal::parse("1e-15", 512);
  const double floor = default_residual_tolerance(ctx).to_double();
  Outcome out;
  double worst = 0;
  double rmin = 1e300;
  double rmax = 0;
  std::size_t ratios = 0;
  for (const Params& p : {base_set(), second_set()}) {
    for (std::size_t n = 0; n <= 10; ++n) {
      const ResidualReport r1 = toda_residuals(p, n, h, SequenceSource::Oracle, ctx, tol);
      const ResidualReport r2 = toda_residuals(p, n, h2, SequenceSource::Oracle, ctx, tol);
      out.pass = out.pass && r1.passes() && r1.names().size() == (n == 0 ? 5u : 6u);
      for (const ResidualEntry& e : r1.entries()) {
        const double a = e.residual.to_double();
        worst = std::max(worst, a);
        const double b = r2.find(e.name, n)->residual.to_double();
        if (a <= floor || b <= floor) continue;
        const double ratio = a / b;
        rmin = std::min(rmin, ratio);
        rmax = std::max(rmax, ratio);
        ++ratios;
        if (ratio < kRatioLo || ratio > kRatioHi) {
          out.pass = false;
          out.detail += e.name + "@" + std::to_string(n) + " ratio " + sci(ratio) + "; ";
        }
      }
    }
  }
  out.detail += "max residual " + sci(worst) + ", " + std::to_string(ratios) + " halving ratios in [" + sci(rmin) +
                ", " + sci(rmax) + "]";
  return out;
}

Outcome sigma() {
  const PrecisionCtx ctx = at_bits(512);
  const BigReal h = BigReal::pow2(-40, 512);
  double worst = 0;
  double perturbed = 1e300;
  for (const Params& p : {base_set(), second_set()}) {
    for (std::size_t n : {1u, 3u, 5u, 10u}) {
      worst = std::max(worst, sigma_pvi_residual(p, n, h, SequenceSource::Oracle, ctx).to_double());
      SigmaParams sp = make_sigma_params(p, n, ctx);
      sp.K += 1L;
      perturbed = std::min(perturbed, sigma_pvi_residual(p, sp, h, SequenceSource::Oracle, ctx).to_double());
    }
  }
  return {worst < kSigmaTol && perturbed > kSigmaSensitivity,
          "max residual " + sci(worst) + ", min residual with K+1 " + sci(perturbed)};
}

Outcome riccati() {
  const PrecisionCtx ctx = at_bits(512);
  const BigReal h = BigReal::pow2(-40, 512);
  Params shifted = base_set();
  shifted.lattice = Lattice::Shifted;
  double worst = 0;
  for (const Params& p : {base_set(), second_set(), shifted}) {
    worst = std::max(worst, abs(riccati_constant(p, h, ctx) + ctx.real(p.gamma)).to_double());
  }
  return {worst < kRiccatiTol, "max |constant + gamma| " + sci(worst)};
}

std::string idx(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "none"; }

Outcome precision() {
  const auto t0 = Clock::now();
  const auto reports = precision_study(base_set(), {10, 20, 50}, 100);
  const double secs = seconds_since(t0);
  const auto& d10 = reports[0].divergence_index;
  const auto& d20 = reports[1].divergence_index;
  const auto& d50 = reports[2].divergence_index;
  const bool ok = d10 && *d10 >= 30 && *d10 <= 60 && d20 && *d20 >= 60 && *d20 <= 120 && *d20 > *d10 && !d50 &&
                  secs < kStudySeconds;
  return {ok, "divergence at 10/20/50 digits: " + idx(d10) + "/" + idx(d20) + "/" + idx(d50) + ", " + sci(secs) + " s"};
}

Outcome limits() {
  const PrecisionCtx ctx = at_bits(512);
  const StudyReport s = limit_report(base_set(), 200, ctx);
  Params sp = base_set();
  sp.lattice = Lattice::Shifted;
  const StudyReport t = limit_report(sp, 200, ctx);
  const double xg = s.x_limit_gap->to_double();
  const double yg = s.y_limit_gap->to_double();
  const double xh = t.x_limit_gap->to_double();
  return {xg < kXGap && yg < kYGap && xh < kXGap,
          "x gap " + sci(xg) + ", y gap " + sci(yg) + ", shifted x gap " + sci(xh) + " (shifted y gap " +
              sci(t.y_limit_gap->to_double()) + ")"};
}

Outcome perturbation() {
  const PrecisionCtx ctx = at_bits(256);
  const auto reports = perturbation_study(
      base_set(), {ctx.zero(), BigReal::parse("1e-6", 256), BigReal::parse("-1e-6", 256)}, 150, ctx);
  const auto& z = reports[0].divergence_index;
  const auto& p = reports[1].divergence_index;
  const auto& m = reports[2].divergence_index;
  return {!z && p && *p < kPerturbLimit && m && *m < kPerturbLimit,
          "divergence for delta 0/+1e-6/-1e-6: " + idx(z) + "/" + idx(p) + "/" + idx(m)};
}

Outcome swap() {
  const PrecisionCtx ctx = at_bits(256);
  const double tol = default_residual_tolerance(ctx).to_double();
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(1, 20);
  std::uniform_int_distribution<int> cnum(1, 7);
  double worst = 0;
  int sets = 0;
  auto track = [&](const std::vector<BigReal>& a, const std::vector<BigReal>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, i < b.size() ? rel(a[i], b[i]) : 1.0);
  };
  while (sets < 5) {
    Params p{Rational(num(rng), 3), Rational(num(rng), 3), Rational(num(rng), 3), Rational(cnum(rng), 8),
             Lattice::Standard};
    p.alpha.canonicalize();
    p.beta.canonicalize();
    p.gamma.canonicalize();
    p.c.canonicalize();
    if (p.alpha == p.beta || p.is_meixner()) continue;
    ++sets;
    const Params q = p.swapped();
    track(weight_sequence(p, 20, ctx), weight_sequence(q, 20, ctx));
    track(moment_table(p, 8, ctx).moments, moment_table(q, 8, ctx).moments);
    const CoeffSeq cp = coeffs_oracle(p, 10, ctx);
    const CoeffSeq cq = coeffs_oracle(q, 10, ctx);
    track(cp.a2, cq.a2);
    track(cp.b, cq.b);
    const XYSeq xp = xy_from_coeffs(p, cp, ctx);
    const XYSeq xq = xy_from_coeffs(q, cq, ctx);
    track(xp.x, xq.x);
    track(xp.y, xq.y);
    track(xp.S, xq.S);
    const IterateResult ip = iterate(p, 10, ctx);
    const IterateResult iq = iterate(q, 10, ctx);
    track(ip.xy.x, iq.xy.x);
    track(ip.xy.y, iq.xy.y);
    track({sigma_value(p, 2, ctx.real(p.c), SequenceSource::Oracle, ctx)},
          {sigma_value(q, 2, ctx.real(q.c), SequenceSource::Oracle, ctx)});
  }
  return {worst < tol, std::to_string(sets) + " parameter sets, max rel diff " + sci(worst) + " (tol " + sci(tol) + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"Meixner exactness", meixner},
      {"oracle and recurrence agree", equivalence},
      {"identity residual suite", identities},
      {"structure relation", structure},
      {"Toda relations", toda},
      {"sigma-form Painleve VI", sigma},
      {"Riccati constant", riccati},
      {"precision phenomenon", precision},
      {"limit conjecture evidence", limits},
      {"seed sensitivity", perturbation},
      {"alpha-beta swap symmetry", swap},
  };
  int failures = 0;
  int id = 0;
  for (const auto& [name, fn] : criteria) {
    ++id;
    Outcome o;
    try {
      o = fn();
    } catch (const Error& e) {
      o = {false, std::string(to_string(e.kind())) + ": " + e.what()};
    } catch (const std::exception& e) {
      o = {false, e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
