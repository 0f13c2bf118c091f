#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hypopq/big_real.hpp"
#include "hypopq/numerics.hpp"
#include "hypopq/rational.hpp"

namespace hypopq {

enum class Lattice { Standard, Shifted };

std::string_view to_string(Lattice lattice);
Lattice parse_lattice(std::string_view text);

/// Parameters of the weights w_k = (alpha)_k (beta)_k c^k / ((gamma)_k k!),
/// placed either on {0, 1, 2, ...} or on the shifted lattice {1-gamma, 2-gamma, ...}.
///
/// Values are kept as exact rationals so the same measure can be evaluated at
/// any precision without re-rounding its inputs.
struct Params {
  Rational alpha;
  Rational beta;
  Rational gamma;
  Rational c;
  Lattice lattice = Lattice::Standard;

  static Params parse(std::string_view alpha, std::string_view beta, std::string_view gamma,
                      std::string_view c, Lattice lattice = Lattice::Standard);

  /// alpha, beta, gamma > 0 and 0 < c < 1. On the shifted lattice also
  /// alpha-gamma+1, beta-gamma+1, 2-gamma > 0 and alpha, beta != gamma.
  void validate() const;

  Params swapped() const;
  Params with_c(const Rational& new_c) const;
  /// alpha == gamma or beta == gamma: the Meixner weights (beta)_k c^k / k!.
  bool is_meixner() const { return alpha == gamma || beta == gamma; }
  std::string key() const;

  friend bool operator==(const Params&, const Params&) = default;
};

/// The parameters rounded once to the context precision.
struct ParamReals {
  BigReal alpha;
  BigReal beta;
  BigReal gamma;
  BigReal c;
};

ParamReals reals(const Params& params, const PrecisionCtx& ctx);

/// Standard-lattice parameters (alpha-gamma+1, beta-gamma+1, 2-gamma, c) whose
/// weights coincide with the shifted-lattice weights. Throws InvalidParam if
/// any transformed parameter is <= 0.
Params shifted_params(const Params& params);

/// The standard-lattice measure carrying the same weights as params: params
/// itself, or shifted_params(params) on the shifted lattice.
Params standard_equivalent(const Params& params);

/// w_0..w_kmax normalised to w_0 = 1, built from the term ratio
/// w_{k+1}/w_k = (alpha+k)(beta+k)c / ((gamma+k)(k+1)).
std::vector<BigReal> weight_sequence(const Params& params, std::size_t kmax, const PrecisionCtx& ctx);

/// Gauss series 2F1(a, b; cc; z) for 0 <= z < 1.
BigReal hyp2f1(const BigReal& a, const BigReal& b, const BigReal& cc, const BigReal& z,
               const PrecisionCtx& ctx);

/// m_n = sum_k k^n w_k of the standard-equivalent measure, summed directly.
BigReal moment(const Params& params, std::size_t n, const PrecisionCtx& ctx);

struct MomentTable {
  Params params;
  std::vector<BigReal> moments;
  PrecisionCtx ctx;
};

/// m_0..m_{count-1} from a single pass over the weights.
MomentTable moment_table(const Params& params, std::size_t count, const PrecisionCtx& ctx);

/// u(x) = -1 + (gamma+x-1) x / (c (alpha+x-1)(beta+x-1)). Throws PoleHit near
/// x = 1-alpha or x = 1-beta.
BigReal potential_u(const Params& params, const BigReal& x, const PrecisionCtx& ctx);

struct InitialXY {
  BigReal x0;
  BigReal y0;
};

/// y0 = 0 and x0 = m1/m0 - ((alpha+beta)c - gamma)/(1-c) on the standard
/// equivalent parameters, plus gamma-1 on the shifted lattice.
InitialXY initial_xy(const Params& params, const PrecisionCtx& ctx);

/// The context used for weight series: the term cap is raised for c > 9/10.
PrecisionCtx series_ctx(const Params& params, std::size_t max_power, const PrecisionCtx& ctx);

}  // namespace hypopq
