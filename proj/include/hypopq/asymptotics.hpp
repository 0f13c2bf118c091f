#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hypopq/big_real.hpp"
#include "hypopq/numerics.hpp"
#include "hypopq/weights.hpp"

namespace hypopq {

struct StudyReport {
  Params params;
  BigReal::Bits bits = 0;
  std::optional<int> digits;
  std::size_t N = 0;
  /// |x_N - x target|; absent when the run stopped before N.
  std::optional<BigReal> x_limit_gap;
  /// |y_N + N slope - y target|.
  std::optional<BigReal> y_limit_gap;
  std::optional<std::size_t> divergence_index;
  std::optional<BigReal> delta;
  std::string notes;
};

struct LimitTargets {
  BigReal x;
  BigReal y;
  BigReal slope;
};

/// gamma, (gamma-a)(gamma-b), slope gamma on the standard lattice;
/// 1, (1-a)(1-b), slope 1 on the shifted one.
LimitTargets limit_targets(const Params& params, const PrecisionCtx& ctx);

/// Iterates to N and reports the gaps to the conjectured limits. The run is
/// repeated at twice the precision; while the two disagree at index N by more
/// than 1e-10 relative, precision doubles. Gives up with PrecisionExhausted
/// beyond max_bits.
StudyReport limit_report(const Params& params, std::size_t N, const PrecisionCtx& ctx,
                         BigReal::Bits max_bits = 16384);

/// One report per delta: the seed is (x0 + delta, 0) and divergence_index is
/// the first n with |x_n - target| > 10 |x_n - target| of the unperturbed run.
/// A singular step counts as divergence at that index and is noted.
/// base_x0 replaces the seed x0 of both runs.
std::vector<StudyReport> perturbation_study(const Params& params, const std::vector<BigReal>& deltas, std::size_t N,
                                            const PrecisionCtx& ctx,
                                            const std::optional<BigReal>& base_x0 = std::nullopt);

/// One report per digit level d, iterated at ceil(d log2 10) bits and compared
/// with a reference at 4 times the largest level. divergence_index is the first
/// n where x_n or y_n deviates from the reference by more than 1e-3 relative.
std::vector<StudyReport> precision_study(const Params& params, const std::vector<int>& digit_levels, std::size_t N);

}  // namespace hypopq
