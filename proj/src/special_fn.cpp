#include "qratio/special_fn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qratio/errors.hpp"

namespace qratio::special_fn {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;
constexpr double kInvE = 0.367879441171442321595523770161460867;
constexpr int kMaxIter = 100;

// Series around the branch point x = -1/e in p = sqrt(2(1 + e*x)), valid on
// both branches (p >= 0 gives W0, p <= 0 gives W-1). Error is O(p^4).
double branch_point_series(double p) {
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
}

// Halley refinement of w*exp(w) = x starting from a guess on either branch.
double halley_we(double w, double x) {
  for (int i = 0; i < kMaxIter; ++i) {
    const double e = std::exp(w);
    const double f = w * e - x;
    const double step =
        f / (e * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

// Checks the domain of both real branches; returns true when the caller
// should return -1 outright (input clamped to the branch point).
bool clamp_at_branch_point(double& x, const char* fn) {
  if (x >= -kInvE) return false;
  if (x < -kInvE - 1e-15) {
    throw std::domain_error(std::string(fn) + ": argument " +
                            std::to_string(x) + " below -1/e");
  }
  x = -kInvE;
  return true;
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x)) throw std::domain_error("lambert_w0: argument is NaN");
  if (clamp_at_branch_point(x, "lambert_w0")) return -1.0;
  if (x == 0.0) return 0.0;

  double w;
  if (x < -0.25) {
    const double p = std::sqrt(2.0 * (1.0 + kE * x));
    w = branch_point_series(p);
    // Within O(p^4) of the root already; Halley's denominator degenerates
    // as w -> -1, so return the series directly when p is tiny.
    if (p < 1e-4) return w;
  } else if (x < kE) {
    // Pade-flavoured start around zero, good enough for Halley everywhere
    // in this range.
    w = x * (1.0 + x * (-1.0 + x * 1.5)) / (1.0 + x * (0.5 + x));
    if (x > 1.0) w = std::log(x);
    if (w < -0.9) w = -0.9;
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley_we(w, x);
}

double lambert_wm1(double x) {
  if (std::isnan(x)) throw std::domain_error("lambert_wm1: argument is NaN");
  if (x >= 0.0) {
    throw std::domain_error("lambert_wm1: argument must be negative");
  }
  if (clamp_at_branch_point(x, "lambert_wm1")) return -1.0;

  double w;
  if (x > -0.27) {
    // Away from the branch point the asymptotic log form is a solid start.
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  } else {
    const double p = -std::sqrt(2.0 * (1.0 + kE * x));
    w = branch_point_series(p);
    if (p > -1e-4) return w;
  }
  return halley_we(w, x);
}

double lambert_w0_from_log(double lx) {
  if (!(lx >= 1.0)) {
    throw std::domain_error("lambert_w0_from_log: requires lx >= 1");
  }
  // Solve w + log(w) = lx by Newton; w > 0 keeps it well conditioned.
  const double ll = std::log(lx);
  double w = lx - ll + ll / lx;
  for (int i = 0; i < kMaxIter; ++i) {
    const double step = (w + std::log(w) - lx) / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double lambert_wm1_from_log(double lx) {
  if (!(lx <= -2.0)) {
    throw std::domain_error("lambert_wm1_from_log: requires lx <= -2");
  }
  // Solve w + log(-w) = lx for w < -1 by Newton.
  double w = lx - std::log(-lx);
  for (int i = 0; i < kMaxIter; ++i) {
    const double step = (w + std::log(-w) - lx) / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double lambert_w(double x, WBranch branch) {
  return branch == WBranch::principal ? lambert_w0(x) : lambert_wm1(x);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_pdf(double x) {
  constexpr double inv_sqrt_2pi = 0.398942280401432677939946059934381868;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

namespace {

// ALGORITHM AS241 (Wichura 1988), the PPND16 variant: rational minimax
// approximations on three ranges of p, accurate to ~1e-16 relative.
double as241(double p) {
  constexpr double a0 = 3.3871328727963666080e0;
  constexpr double a1 = 1.3314166789178437745e+2;
  constexpr double a2 = 1.9715909503065514427e+3;
  constexpr double a3 = 1.3731693765509461125e+4;
  constexpr double a4 = 4.5921953931549871457e+4;
  constexpr double a5 = 6.7265770927008700853e+4;
  constexpr double a6 = 3.3430575583588128105e+4;
  constexpr double a7 = 2.5090809287301226727e+3;
  constexpr double b1 = 4.2313330701600911252e+1;
  constexpr double b2 = 6.8718700749205790830e+2;
  constexpr double b3 = 5.3941960214247511077e+3;
  constexpr double b4 = 2.1213794301586595867e+4;
  constexpr double b5 = 3.9307895800092710610e+4;
  constexpr double b6 = 2.8729085735721942674e+4;
  constexpr double b7 = 5.2264952788528545610e+3;
  constexpr double c0 = 1.42343711074968357734e0;
  constexpr double c1 = 4.63033784615654529590e0;
  constexpr double c2 = 5.76949722146069140550e0;
  constexpr double c3 = 3.64784832476320460504e0;
  constexpr double c4 = 1.27045825245236838258e0;
  constexpr double c5 = 2.41780725177450611770e-1;
  constexpr double c6 = 2.27238449892691845833e-2;
  constexpr double c7 = 7.74545014278341407640e-4;
  constexpr double d1 = 2.05319162663775882187e0;
  constexpr double d2 = 1.67638483018380384940e0;
  constexpr double d3 = 6.89767334985100004550e-1;
  constexpr double d4 = 1.48103976427480074590e-1;
  constexpr double d5 = 1.51986665636164571966e-2;
  constexpr double d6 = 5.47593808499534494600e-4;
  constexpr double d7 = 1.05075007164441684324e-9;
  constexpr double e0 = 6.65790464350110377720e0;
  constexpr double e1 = 5.46378491116411436990e0;
  constexpr double e2 = 1.78482653991729133580e0;
  constexpr double e3 = 2.96560571828504891230e-1;
  constexpr double e4 = 2.65321895265761230930e-2;
  constexpr double e5 = 1.24266094738807843860e-3;
  constexpr double e6 = 2.71155556874348757815e-5;
  constexpr double e7 = 2.01033439929228813265e-7;
  constexpr double f1 = 5.99832206555887937690e-1;
  constexpr double f2 = 1.36929880922735805310e-1;
  constexpr double f3 = 1.48753612908506148525e-2;
  constexpr double f4 = 7.86869131145613259100e-4;
  constexpr double f5 = 1.84631831751005468180e-5;
  constexpr double f6 = 1.42151175831644588870e-7;
  constexpr double f7 = 2.04426310338993978564e-15;

  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((a7 * r + a6) * r + a5) * r + a4) * r + a3) * r + a2) * r +
             a1) *
                r +
            a0) /
           (((((((b7 * r + b6) * r + b5) * r + b4) * r + b3) * r + b2) * r +
             b1) *
                r +
            1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double ret;
  if (r <= 5.0) {
    r -= 1.6;
    ret = (((((((c7 * r + c6) * r + c5) * r + c4) * r + c3) * r + c2) * r +
            c1) *
               r +
           c0) /
          (((((((d7 * r + d6) * r + d5) * r + d4) * r + d3) * r + d2) * r +
            d1) *
               r +
           1.0);
  } else {
    r -= 5.0;
    ret = (((((((e7 * r + e6) * r + e5) * r + e4) * r + e3) * r + e2) * r +
            e1) *
               r +
           e0) /
          (((((((f7 * r + f6) * r + f5) * r + f4) * r + f3) * r + f2) * r +
            f1) *
               r +
           1.0);
  }
  return q < 0.0 ? -ret : ret;
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  }
  double x = as241(p);
  // One Newton polish against the erfc-based CDF; skip in the far tails
  // where the density underflows and AS241 is already at full precision.
  const double d = normal_pdf(x);
  if (d > 1e-300) {
    x -= (normal_cdf(x) - p) / d;
  }
  return x;
}

}  // namespace qratio::special_fn
