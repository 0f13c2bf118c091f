#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "hypopq/big_real.hpp"
#include "hypopq/numerics.hpp"
#include "hypopq/oracle.hpp"
#include "hypopq/report.hpp"
#include "hypopq/weights.hpp"

namespace hypopq {

struct DPState {
  std::size_t n = 0;
  BigReal x;
  BigReal y;
};

/// Solves (dP1) for y_{n+1}:
///   (y_n - ab + (a+b+n) x_n - x_n^2)(y_{n+1} - ab + (a+b+n+1) x_n - x_n^2)
///     = (x_n - 1)(x_n - a)(x_n - b)(x_n - g) / c.
/// Throws SingularStep when the first factor vanishes to working precision,
/// which happens identically for the Meixner family.
BigReal dp1_step(const Params& params, std::size_t n, const BigReal& x_n, const BigReal& y_n,
                 const PrecisionCtx& ctx);

/// Solves (dP2) at index m >= 1 for x_m given x_{m-1} and y_m:
///   (x_m + Y_m)(x_{m-1} + Y_m) = N(y_m) / D(y_m)^2.
/// Throws SingularStep if D or x_{m-1} + Y_m vanishes to working precision.
BigReal dp2_step(const Params& params, std::size_t m, const BigReal& x_prev, const BigReal& y_m,
                 const PrecisionCtx& ctx);

struct IterateResult {
  XYSeq xy;
  /// Index whose step failed; xy then holds indices 0..failed_at-1.
  std::optional<std::size_t> failed_at;
  std::string failure;
  /// First index at which the every-10-steps identity monitor exceeded 1e-6.
  std::optional<std::size_t> suspect_at;
  /// Served by the Meixner closed forms x_n = gamma, y_n = -n gamma.
  bool closed_form = false;

  bool complete() const { return !failed_at.has_value(); }
};

/// Runs (dP1)/(dP2) forward from the seed (default: initial_xy) to index N.
/// A singular step ends the run early and is reported, not thrown.
IterateResult iterate(const Params& params, std::size_t N, const PrecisionCtx& ctx,
                      const std::optional<InitialXY>& seed = std::nullopt);

/// Normalised residuals of (dP1) and (dP2) for every index the sequence
/// supports. When coeffs is given, the identities linking (a_n^2, b_n) with
/// (x_n, y_n, S_n) are checked too: yyx, difadify, difaxdify, xxy, xxyy.
ResidualReport dp_residuals(const Params& params, const XYSeq& xy, const CoeffSeq* coeffs,
                            const PrecisionCtx& ctx, const std::optional<BigReal>& tolerance = std::nullopt);

/// 2^-(bits/2), the bound residuals of exact sequences are held to.
BigReal default_residual_tolerance(const PrecisionCtx& ctx);

}  // namespace hypopq
