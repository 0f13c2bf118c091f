#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "hypopq/big_real.hpp"
#include "hypopq/numerics.hpp"
#include "hypopq/oracle.hpp"
#include "hypopq/report.hpp"
#include "hypopq/weights.hpp"

namespace hypopq {

/// Where the sequences at each stencil node come from.
enum class SequenceSource { Oracle, Iterate };

std::string_view to_string(SequenceSource source);
SequenceSource parse_source(std::string_view text);

struct NodeSequences {
  CoeffSeq coeffs;
  XYSeq xy;
};

/// Coefficients and x/y sequences up to index N for one parameter set,
/// memoised per (params, source, bits) in a process-wide, mutex-guarded cache.
/// A cached run to a larger N is reused.
const NodeSequences& sequences_at(const Params& params, std::size_t N, SequenceSource source,
                                  const PrecisionCtx& ctx);
void clear_sequence_cache();

/// Constants of the sigma equation for index n:
///   K = ab - (a+b+n)^2/4,
///   L = ((a+b+g+1)n + a^2 + b^2 - (a+b)(g+1) + 2g)/4,
///   d1 = (n+a-b)/2, d2 = (-n+a-b)/2, d3 = (n+a+b-2)/2, d4 = (n+a+b-2g)/2.
struct SigmaParams {
  BigReal K;
  BigReal L;
  BigReal d1;
  BigReal d2;
  BigReal d3;
  BigReal d4;
  std::size_t n = 0;
};

SigmaParams make_sigma_params(const Params& params, std::size_t n, const PrecisionCtx& ctx);

/// Residuals of the six c-derivative relations at index n, derivatives by
/// five-point stencils of step h with every node recomputed from scratch:
/// Toda1, Toda2, xder, yder, xToda, yToda (Toda1 only for n >= 1).
ResidualReport toda_residuals(const Params& params, std::size_t n, const BigReal& h, SequenceSource source,
                              const PrecisionCtx& ctx, const BigReal& tolerance);

/// Companion checks at index n: yS (y_n = [(1-c)S_n]'), xnyS (the x_n closure
/// built from y_n', y_n, S_n) and riccati_n, the second-order relation between
/// x_n and y_n whose n = 0 case is the Riccati equation for the seed.
ResidualReport toda_aux_residuals(const Params& params, std::size_t n, const BigReal& h, SequenceSource source,
                                  const PrecisionCtx& ctx, const BigReal& tolerance);

/// sigma_n(c) = (c-1) S_n(c) + K c + L.
BigReal sigma_value(const Params& params, std::size_t n, const BigReal& c_eval, SequenceSource source,
                    const PrecisionCtx& ctx);

/// Normalised residual of the sigma-form Painleve VI equation
///   s' [c(c-1) s'']^2 + [s'(2s - (2c-1)s') + d1 d2 d3 d4]^2 - prod_i (s' + d_i^2),
/// divided by the largest of its three terms.
BigReal sigma_pvi_residual(const Params& params, std::size_t n, const BigReal& h, SequenceSource source,
                           const PrecisionCtx& ctx);
/// Same with caller-supplied constants (used to perturb K or L).
BigReal sigma_pvi_residual(const Params& params, const SigmaParams& sp, const BigReal& h, SequenceSource source,
                           const PrecisionCtx& ctx);

/// c(1-c) x0' + (1-c) x0^2 + ((a+b)c - g - 1) x0 - ab c for the seed x0(c);
/// constant in c.
BigReal riccati_constant(const Params& params, const BigReal& h, const PrecisionCtx& ctx);

}  // namespace hypopq
