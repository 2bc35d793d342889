#include "qratio/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qratio/dagum.hpp"

namespace qratio::estimator {

namespace {

double log_expm1(double u) {
  if (u > 36.0) return u;
  return std::log(std::expm1(u));
}

// log(q^(-1/a) - 1)
double log_qpow_term(double q, double a) {
  return log_expm1(-std::log(q) / a);
}

double softplus(double t) {
  if (t > 50.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

// 0-based index of the order statistic X(floor(q n) + 1). The nudge keeps
// products like 0.3 * 10 from landing just below their exact integer value.
std::size_t order_index(double q, std::size_t n) {
  return static_cast<std::size_t>(
      std::floor(q * static_cast<double>(n) + 1e-9));
}

std::vector<double> sorted_positive_copy(std::span<const double> data,
                                         const char* fn) {
  if (data.empty()) {
    throw std::domain_error(std::string(fn) + ": data is empty");
  }
  for (double x : data) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::domain_error(std::string(fn) +
                              ": data must be positive and finite");
    }
  }
  std::vector<double> s(data.begin(), data.end());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

double sample_quantile_ratio(std::span<const double> data,
                             const RatioSpec& spec) {
  validate(spec);
  const std::vector<double> s =
      sorted_positive_copy(data, "sample_quantile_ratio");
  const std::size_t n = s.size();
  const std::size_t ia = order_index(spec.alpha, n);
  const std::size_t ib = order_index(spec.beta, n);
  if (ib >= n) {
    throw std::domain_error(
        "sample_quantile_ratio: upper order statistic index exceeds sample "
        "size");
  }
  if (ia == ib) {
    throw std::domain_error(
        "sample_quantile_ratio: quantile orders select the same order "
        "statistic");
  }
  return s[ib] / s[ia];
}

double asymptotic_w2(double a, const RatioSpec& spec) {
  validate(spec);
  if (!(std::isfinite(a) && a > 0.0)) {
    throw std::domain_error("asymptotic_w2: a must be positive");
  }
  const double alpha = spec.alpha;
  const double beta = spec.beta;
  const double lgap = log_qpow_term(alpha, a) - log_qpow_term(beta, a);
  const double pa = -std::expm1(std::log(alpha) / a);  // 1 - alpha^(1/a)
  const double pb = -std::expm1(std::log(beta) / a);   // 1 - beta^(1/a)
  const double ca = (1.0 - alpha) / alpha;
  const double cb = (1.0 - beta) / beta;
  const double bracket =
      cb / (pb * pb) + ca / (pa * pa) - 2.0 * cb / (pa * pb);
  return bracket / ((a * lgap) * (a * lgap));
}

double log_likelihood(const DagumParams& params,
                      std::span<const double> data) {
  validate(params);
  if (data.empty()) {
    throw std::domain_error("log_likelihood: data is empty");
  }
  const double la = std::log(params.a);
  const double lv = std::log(params.v);
  const double ll = std::log(params.lambda);
  const double av = params.a * params.v;
  double sum = 0.0;
  for (double x : data) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::domain_error("log_likelihood: data must be positive");
    }
    const double y = std::log(x) - ll;
    sum += la + lv - ll + (av - 1.0) * y -
           (params.a + 1.0) * softplus(params.v * y);
  }
  return sum;
}

namespace {

using Point = std::array<double, 3>;  // (log a, log v, log lambda)

DagumParams from_log_point(const Point& t) {
  return DagumParams{std::exp(t[0]), std::exp(t[1]), std::exp(t[2])};
}

double neg_log_likelihood(const Point& t, std::span<const double> data) {
  const DagumParams p = from_log_point(t);
  if (!std::isfinite(p.a) || !std::isfinite(p.v) || !std::isfinite(p.lambda) ||
      p.a <= 0.0 || p.v <= 0.0 || p.lambda <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double ll = log_likelihood(p, data);
  return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
}

}  // namespace

DagumParams fit_mle(std::span<const double> data) {
  const std::vector<double> s = sorted_positive_copy(data, "fit_mle");
  const std::size_t n = s.size();
  if (n < 50) {
    throw std::domain_error("fit_mle: need at least 50 observations");
  }

  const double median = s[order_index(0.5, n)];
  double v0 = 1.0;
  {
    const RatioSpec heur{0.2, 0.8};
    const std::size_t ia = order_index(0.2, n);
    const std::size_t ib = order_index(0.8, n);
    if (ib < n && ia != ib && s[ib] > s[ia] * (1.0 + 1e-6)) {
      v0 = dagum::v_from_ratio(1.0, s[ib] / s[ia], heur);
    }
  }

  Point start{0.0, std::log(v0), std::log(median)};
  std::array<Point, 4> x;
  std::array<double, 4> f;
  x[0] = start;
  for (int i = 1; i < 4; ++i) {
    x[i] = start;
    x[i][i - 1] += 0.5;
  }
  for (int i = 0; i < 4; ++i) f[i] = neg_log_likelihood(x[i], data);

  // Nelder-Mead with the standard coefficients (reflect 1, expand 2,
  // contract 1/2, shrink 1/2).
  constexpr int kMaxIter = 500;
  int iter = 0;
  for (; iter < kMaxIter; ++iter) {
    std::array<int, 4> ord{0, 1, 2, 3};
    std::sort(ord.begin(), ord.end(),
              [&](int l, int r) { return f[l] < f[r]; });
    const int best = ord[0], second = ord[2], worst = ord[3];
    if (std::isfinite(f[best]) &&
        f[worst] - f[best] <= 1e-9 * (std::abs(f[best]) + 1e-9)) {
      break;
    }

    Point centroid{0.0, 0.0, 0.0};
    for (int i = 0; i < 4; ++i) {
      if (i == worst) continue;
      for (int d = 0; d < 3; ++d) centroid[d] += x[i][d] / 3.0;
    }
    auto blend = [&](double coef) {
      Point p;
      for (int d = 0; d < 3; ++d) {
        p[d] = centroid[d] + coef * (x[worst][d] - centroid[d]);
      }
      return p;
    };

    const Point refl = blend(-1.0);
    const double f_refl = neg_log_likelihood(refl, data);
    if (f_refl < f[best]) {
      const Point exp_p = blend(-2.0);
      const double f_exp = neg_log_likelihood(exp_p, data);
      if (f_exp < f_refl) {
        x[worst] = exp_p;
        f[worst] = f_exp;
      } else {
        x[worst] = refl;
        f[worst] = f_refl;
      }
    } else if (f_refl < f[second]) {
      x[worst] = refl;
      f[worst] = f_refl;
    } else {
      const Point contr = blend(f_refl < f[worst] ? -0.5 : 0.5);
      const double f_contr = neg_log_likelihood(contr, data);
      if (f_contr < std::min(f_refl, f[worst])) {
        x[worst] = contr;
        f[worst] = f_contr;
      } else {
        for (int i = 0; i < 4; ++i) {
          if (i == best) continue;
          for (int d = 0; d < 3; ++d) {
            x[i][d] = x[best][d] + 0.5 * (x[i][d] - x[best][d]);
          }
          f[i] = neg_log_likelihood(x[i], data);
        }
      }
    }
  }

  const int best = static_cast<int>(
      std::min_element(f.begin(), f.end()) - f.begin());
  const DagumParams fitted = from_log_point(x[best]);
  if (iter >= kMaxIter) {
    throw fit_error("fit_mle: simplex failed to converge", fitted, -f[best]);
  }
  if (!std::isfinite(f[best])) {
    throw fit_error("fit_mle: likelihood is not finite at the optimum",
                    fitted, -f[best]);
  }
  return fitted;
}

DagumParams fit_quantile_match(std::span<const double> data) {
  const std::vector<double> s =
      sorted_positive_copy(data, "fit_quantile_match");
  const std::size_t n = s.size();
  const std::size_t i20 = order_index(0.2, n);
  const std::size_t i50 = order_index(0.5, n);
  const std::size_t i80 = order_index(0.8, n);
  if (i80 >= n || i20 == i50 || i50 == i80) {
    throw std::domain_error(
        "fit_quantile_match: sample too small to separate the 0.2/0.5/0.8 "
        "order statistics");
  }
  const double q20 = s[i20], q50 = s[i50], q80 = s[i80];
  if (!(q20 < q50 && q50 < q80)) {
    throw fit_error("fit_quantile_match: tied sample quantiles",
                    DagumParams{1.0, 1.0, q50},
                    std::numeric_limits<double>::quiet_NaN());
  }

  // The ratio log(q80/q50) / log(q50/q20) pins down a alone; solve by
  // bisection in log a, then v and lambda follow in closed form.
  const double target = std::log(q80 / q50) / std::log(q50 / q20);
  auto gap = [](double q1, double q2, double a) {
    return log_qpow_term(q1, a) - log_qpow_term(q2, a);
  };
  auto g = [&](double la) {
    const double a = std::exp(la);
    return gap(0.5, 0.8, a) / gap(0.2, 0.5, a) - target;
  };

  double lo = std::log(1e-3), hi = std::log(1e3);
  double g_lo = g(lo), g_hi = g(hi);
  if (std::isnan(g_lo) || std::isnan(g_hi) || g_lo * g_hi > 0.0) {
    throw fit_error(
        "fit_quantile_match: sample quantile ratios outside the fittable "
        "range",
        DagumParams{1.0, 1.0, q50}, std::numeric_limits<double>::quiet_NaN());
  }
  for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if (g_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  const double a = std::exp(0.5 * (lo + hi));
  const double v = gap(0.2, 0.5, a) / std::log(q50 / q20);
  const double lambda = q50 * std::exp(log_qpow_term(0.5, a) / v);
  const DagumParams fitted{a, v, lambda};
  validate(fitted);
  return fitted;
}

}  // namespace qratio::estimator
