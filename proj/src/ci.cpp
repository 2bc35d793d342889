#include "qratio/ci.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "qratio/errors.hpp"
#include "qratio/special_fn.hpp"

namespace qratio::ci {

namespace {

constexpr double kInvE = 0.367879441171442321595523770161460867;

// Classic Brent zeroin. Assumes f(a) and f(b) straddle the root.
template <typename F>
double brent_zero(F f, double a, double b, double fa, double fb) {
  double c = a, fc = fa;
  double d = b - a, e = d;
  while (true) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() *
                           std::abs(b) +
                       1e-300;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = e = m;
    } else {
      double p, q;
      double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = e = m;
      }
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
  }
}

// Brent's minimizer: golden section with parabolic interpolation where the
// last steps justify it. Returns (argmin, min).
template <typename F>
std::pair<double, double> brent_minimize(F f, double lo, double hi,
                                         double tol_abs, int max_iter) {
  constexpr double golden = 0.3819660112501051518;
  double x = lo + golden * (hi - lo);
  double w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double delta = 0.0, delta2 = 0.0;
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double tol1 =
        tol_abs + std::numeric_limits<double>::epsilon() * std::abs(x);
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - mid) <= tol2 - 0.5 * (hi - lo)) break;

    bool golden_step = true;
    if (std::abs(delta2) > tol1 && std::isfinite(fx) && std::isfinite(fw) &&
        std::isfinite(fv)) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) {
        p = -p;
      } else {
        q = -q;
      }
      const double td = delta2;
      delta2 = delta;
      if (std::abs(p) < std::abs(0.5 * q * td) && p > q * (lo - x) &&
          p < q * (hi - x)) {
        delta = p / q;
        const double u = x + delta;
        if (u - lo < tol2 || hi - u < tol2) {
          delta = (mid - x < 0.0) ? -tol1 : tol1;
        }
        golden_step = false;
      }
    }
    if (golden_step) {
      delta2 = (x < mid) ? hi - x : lo - x;
      delta = golden * delta2;
    }

    const double u =
        (std::abs(delta) >= tol1) ? x + delta : x + (delta > 0.0 ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u >= x) {
        lo = x;
      } else {
        hi = x;
      }
      v = w;
      w = x;
      x = u;
      fv = fw;
      fw = fx;
      fx = fu;
    } else {
      if (u < x) {
        lo = u;
      } else {
        hi = u;
      }
      if (fu <= fw || w == x) {
        v = w;
        w = u;
        fv = fw;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return {x, fx};
}

struct Pivot {
  double sqrt_n;
  double w;
  double r_star;
};

Pivot make_pivot(const RatioEstimate& est) {
  validate(est.spec);
  if (est.n == 0) {
    throw std::domain_error(
        "confidence interval: sample size must be positive");
  }
  if (!(std::isfinite(est.r_star) && est.r_star > 1.0)) {
    throw std::domain_error(
        "confidence interval: point estimate must exceed 1");
  }
  if (!(std::isfinite(est.a_hat) && est.a_hat > 0.0)) {
    throw std::domain_error(
        "confidence interval: shape parameter must be positive");
  }
  return Pivot{std::sqrt(static_cast<double>(est.n)),
               std::sqrt(estimator::asymptotic_w2(est.a_hat, est.spec)),
               est.r_star};
}

double check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::domain_error("endpoint: gamma must lie in (0, 1)");
  }
  if (gamma == 0.5) {
    throw std::domain_error(
        "endpoint: gamma = 1/2 does not define an endpoint");
  }
  return special_fn::normal_quantile(gamma);
}

double pivot_residual(const Pivot& pv, double u, double rho) {
  return pv.sqrt_n * (pv.r_star - rho) - u * pv.w * rho * std::log(rho);
}

}  // namespace

double endpoint_closed_form(double gamma, const RatioEstimate& est) {
  const Pivot pv = make_pivot(est);
  const double u = check_gamma(gamma);
  const double z = pv.sqrt_n / (u * pv.w);

  // rho = r* z / W(r* z e^z). u > 0 puts the argument on the positive axis
  // (principal branch); u < 0 puts it in (-1/e, 0), where the lower branch
  // carries the solution adjacent to r*. Beyond z ~ +-600 the argument
  // leaves double range, so W is evaluated from its logarithm instead.
  const double ln_arg = std::log(pv.r_star) + std::log(std::abs(z)) + z;
  double wval;
  if (u > 0.0) {
    wval = (z > 600.0) ? special_fn::lambert_w0_from_log(ln_arg)
                       : special_fn::lambert_w0(pv.r_star * z * std::exp(z));
  } else if (z < -600.0) {
    wval = special_fn::lambert_wm1_from_log(ln_arg);
  } else {
    const double arg = pv.r_star * z * std::exp(z);
    if (arg < -kInvE - 1e-15) {
      throw numerical_error(
          "endpoint: no real solution at this tail index; the construction "
          "needs a larger sample for so extreme a risk");
    }
    wval = special_fn::lambert_wm1(arg);
  }

  const double rho = pv.r_star * z / wval;
  const double tol = 1e-9 * pv.sqrt_n * pv.r_star;
  if (!(rho > 1.0) || !std::isfinite(rho) ||
      std::abs(pivot_residual(pv, u, rho)) > tol) {
    throw numerical_error(
        "endpoint: closed-form solution rejected by residual check");
  }
  return rho;
}

double endpoint_root_find(double gamma, const RatioEstimate& est) {
  const Pivot pv = make_pivot(est);
  const double u = check_gamma(gamma);
  auto f = [&](double rho) { return pivot_residual(pv, u, rho); };

  const double lo = 1.0 + 1e-12;
  const double f_lo = f(lo);
  double hi = 10.0;
  double f_hi = f(hi);
  constexpr double kHiCap = 1099511627776.0;  // 2^40
  while ((f_hi > 0.0) == (f_lo > 0.0) && hi < kHiCap) {
    hi *= 2.0;
    f_hi = f(hi);
  }
  if ((f_hi > 0.0) == (f_lo > 0.0)) {
    throw numerical_error(
        "endpoint: no sign change found while bracketing the defining "
        "equation up to 2^40");
  }
  return brent_zero(f, lo, hi, f_lo, f_hi);
}

double endpoint(double gamma, const RatioEstimate& est) {
  try {
    return endpoint_closed_form(gamma, est);
  } catch (const numerical_error&) {
    return endpoint_root_find(gamma, est);
  }
}

ConfidenceInterval interval_from_split(const RatioEstimate& est, double level,
                                       const RiskSplit& split) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("confidence level must lie in (0, 1)");
  }
  const double s = split.over_risk;
  if (!(s > 0.0 && s < 1.0 - level)) {
    throw std::domain_error(
        "risk split must lie strictly between 0 and 1 - level");
  }
  ConfidenceInterval out;
  out.lower = endpoint(level + s, est);
  out.upper = endpoint(s, est);
  if (!(out.lower < out.upper)) {
    throw numerical_error("interval endpoints out of order");
  }
  out.level = level;
  out.under_risk = 1.0 - level - s;
  out.over_risk = s;
  out.length = out.upper - out.lower;
  return out;
}

ConfidenceInterval standard_interval(const RatioEstimate& est, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("confidence level must lie in (0, 1)");
  }
  return interval_from_split(est, level, RiskSplit{0.5 * (1.0 - level)});
}

double interval_length(const RatioEstimate& est, double level,
                       const RiskSplit& split) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("confidence level must lie in (0, 1)");
  }
  const double s = split.over_risk;
  if (!(s > 0.0 && s < 1.0 - level)) {
    throw std::domain_error(
        "risk split must lie strictly between 0 and 1 - level");
  }
  return endpoint(s, est) - endpoint(level + s, est);
}

ConfidenceInterval shortest_interval(const RatioEstimate& est, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("confidence level must lie in (0, 1)");
  }
  const double span = 1.0 - level;
  const double edge = 1e-9;

  // Splits too extreme for the construction at this sample size score +inf,
  // steering the minimizer back into the feasible region.
  auto objective = [&](double s) {
    try {
      return interval_length(est, level, RiskSplit{s});
    } catch (const numerical_error&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const auto [s_opt, len_opt] =
      brent_minimize(objective, edge, span - edge, 1e-12, 200);

  const double std_len =
      interval_length(est, level, RiskSplit{0.5 * span});
  if (!(len_opt <= std_len * (1.0 + 1e-9))) {
    throw numerical_error(
        "shortest interval: optimizer failed to match the symmetric split");
  }
  return interval_from_split(est, level, RiskSplit{s_opt});
}

}  // namespace qratio::ci
