#pragma once

namespace qratio::special_fn {

/// The two real branches of the Lambert W function.
enum class WBranch { principal, lower };

/// Principal branch W0 of the Lambert W function: the solution w >= -1 of
/// w * exp(w) = x. Defined for x >= -1/e. Inputs less than -1/e by at most
/// 1e-15 are treated as -1/e; anything further out throws std::domain_error.
/// Accurate to full double precision away from the branch point and to
/// ~1e-14 absolute in its immediate neighbourhood.
double lambert_w0(double x);

/// Lower branch W-1: the solution w <= -1 of w * exp(w) = x, defined for
/// -1/e <= x < 0. Same clamping rule at -1/e as lambert_w0; x >= 0 throws
/// std::domain_error.
double lambert_wm1(double x);

/// W0(exp(lx)) evaluated without forming exp(lx), for arguments whose
/// logarithm is known. Intended for lx large enough that exp(lx) would
/// overflow; requires lx >= 1.
double lambert_w0_from_log(double lx);

/// W-1(-exp(lx)) without forming the exponential, for lx <= -2 (i.e. tiny
/// negative arguments where the direct representation would underflow).
double lambert_wm1_from_log(double lx);

/// Branch-dispatching convenience over lambert_w0 / lambert_wm1.
double lambert_w(double x, WBranch branch);

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal quantile (inverse CDF) for p in (0, 1). Rational minimax
/// approximation polished with one Newton step against normal_cdf, giving
/// full double accuracy across the open interval. Throws std::domain_error
/// for p outside (0, 1).
double normal_quantile(double p);

}  // namespace qratio::special_fn
