#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hypopq/big_real.hpp"
#include "hypopq/numerics.hpp"
#include "hypopq/report.hpp"
#include "hypopq/weights.hpp"

namespace hypopq {

/// Monic recurrence coefficients x P_n = P_{n+1} + b_n P_n + a_n^2 P_{n-1},
/// n = 0..N, with a2[0] = 0.
struct CoeffSeq {
  Params params;
  std::vector<BigReal> a2;
  std::vector<BigReal> b;
  PrecisionCtx ctx;
  /// Total mass of the measure, when the producer knows it.
  std::optional<BigReal> m0;
  /// Decimal digits on which the two-precision Hankel evaluation agreed
  /// (a lower bound on the accuracy of the returned values).
  std::optional<double> agreed_digits;

  std::size_t size() const { return b.size(); }
};

/// The ladder sequences u_n, v_n, r_n, s_n (defined for alpha != beta).
struct LadderSeq {
  std::vector<BigReal> u;
  std::vector<BigReal> v;
  std::vector<BigReal> r;
  std::vector<BigReal> s;

  std::size_t size() const { return u.size(); }
};

/// The symmetric variables x_n, y_n and S_n = x_0 + ... + x_{n-1}.
struct XYSeq {
  std::vector<BigReal> x;
  std::vector<BigReal> y;
  std::vector<BigReal> S;

  std::size_t size() const { return x.size(); }
};

/// Determinant of the n x n Hankel block (m_{i+j}); starred replaces its last
/// column by (m_n, ..., m_{2n-1}). Delta_0 = 1. LU with partial pivoting;
/// throws SingularToPrecision when a pivot drops below 2^-(bits-guard) of the
/// largest term that was combined into it.
BigReal hankel_det(const MomentTable& table, std::size_t n, bool starred, const PrecisionCtx& ctx);

/// a_n^2 = D_{n+1} D_{n-1} / D_n^2 and b_n = D*_{n+1}/D_{n+1} - D*_n/D_n for
/// n = 0..N. Evaluated at ctx.bits and at 2*ctx.bits; the higher-precision
/// values are returned and PrecisionExhausted is raised if the two runs agree
/// to fewer than 10 decimal digits. On the shifted lattice b_n carries the
/// +1-gamma shift.
CoeffSeq coeffs_oracle(const Params& params, std::size_t N, const PrecisionCtx& ctx);

/// The closed forms a_n^2 = n(n+beta-1)c/(1-c)^2, b_n = (n+(n+beta)c)/(1-c)
/// for the standard-lattice Meixner case; the non-gamma parameter plays beta.
CoeffSeq meixner_coeffs(const Params& params, std::size_t N, const PrecisionCtx& ctx);

/// u_n, v_n, r_n, s_n from the coefficients. Throws InvalidParam if alpha == beta.
LadderSeq ladder_sequences(const Params& params, const CoeffSeq& coeffs, const PrecisionCtx& ctx);

/// Recovers (a_n^2, b_n) from (u_n, r_n).
CoeffSeq coeffs_from_ladder(const Params& params, const LadderSeq& ladder, const PrecisionCtx& ctx);

/// Residuals of u+v = (1-c)/c, r+s = -n, the alpha u + beta v and
/// alpha r + beta s relations, and the (u, r) -> (a^2, b) reconstruction
/// against coeffs.
ResidualReport ladder_residuals(const Params& params, const CoeffSeq& coeffs, const BigReal& tolerance,
                                const PrecisionCtx& ctx);

/// x_n = b_n - (n+(n+alpha+beta)c-gamma)/(1-c),
/// y_n = ((1-c)/c) a_n^2 - S_n - n(n+alpha+beta-gamma-1)/(1-c).
XYSeq xy_from_coeffs(const Params& params, const CoeffSeq& coeffs, const PrecisionCtx& ctx);

/// Inverse of xy_from_coeffs; a2[0] is exactly 0.
CoeffSeq coeffs_from_xy(const Params& params, const XYSeq& xy, const PrecisionCtx& ctx);

/// p_0(x)..p_nmax(x) for the orthonormal polynomials of a measure of mass m0.
std::vector<BigReal> eval_orthonormal(const CoeffSeq& coeffs, const BigReal& m0, const BigReal& x,
                                      std::size_t nmax, const PrecisionCtx& ctx);

/// p_n(x+1) - p_n(x) - A_n(x) p_{n-1}(x) + B_n(x) p_n(x) with
/// A_n/a_n = ((1-c)/c)(x+x_n)/((x+alpha)(x+beta)) and
/// B_n = (-n x + y_n)/((x+alpha)(x+beta)). Throws PoleHit at x = -alpha, -beta.
BigReal structure_residual(const Params& params, const CoeffSeq& coeffs, const XYSeq& xy, std::size_t n,
                           const BigReal& x, const PrecisionCtx& ctx);

}  // namespace hypopq
