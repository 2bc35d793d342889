#pragma once

#include <cstddef>
#include <span>

#include "qratio/errors.hpp"
#include "qratio/types.hpp"

namespace qratio {

/// A point estimate of a quantile ratio together with everything the
/// interval construction needs: the sample size, the quantile orders, and
/// the first shape parameter (known or fitted).
struct RatioEstimate {
  double r_star = 0.0;
  std::size_t n = 0;
  RatioSpec spec;
  double a_hat = 0.0;
};

/// Thrown when maximum likelihood fitting fails to converge; carries the
/// best point reached so callers can inspect or reuse it.
class fit_error : public numerical_error {
 public:
  fit_error(const std::string& msg, const DagumParams& best,
            double log_likelihood)
      : numerical_error(msg), best_(best), log_likelihood_(log_likelihood) {}

  const DagumParams& best() const { return best_; }
  double log_likelihood() const { return log_likelihood_; }

 private:
  DagumParams best_;
  double log_likelihood_;
};

}  // namespace qratio

namespace qratio::estimator {

/// Ratio of empirical quantiles X(floor(beta n) + 1) / X(floor(alpha n) + 1),
/// order statistics taken 1-based with no interpolation. Requires positive
/// data and distinct order-statistic indices; throws std::domain_error
/// otherwise.
double sample_quantile_ratio(std::span<const double> data,
                             const RatioSpec& spec);

/// Asymptotic variance factor w^2(a) of the normalized estimator: the
/// sampling variance of the ratio estimate is approximately
/// r^2 (log r)^2 w^2(a) / n. Depends on the quantile orders and the first
/// shape parameter only. Stable for all a > 0 (small-a powers are taken in
/// log space).
double asymptotic_w2(double a, const RatioSpec& spec);

/// Log-likelihood of the sample under the given parameters; positive data
/// required.
double log_likelihood(const DagumParams& params, std::span<const double> data);

/// Full maximum likelihood fit of (a, v, lambda) by Nelder-Mead on the log
/// of each parameter. Starts from the sample median and a quantile-ratio
/// heuristic; throws fit_error (with the best point found) if the simplex
/// fails to shrink within the iteration budget.
DagumParams fit_mle(std::span<const double> data);

/// Cheap moment-free fit that matches the 0.2/0.5/0.8 sample quantiles
/// exactly: lambda from the median, then a by bisection and v in closed
/// form. Far less efficient than fit_mle but orders of magnitude faster;
/// suitable for per-replicate use in large simulations.
DagumParams fit_quantile_match(std::span<const double> data);

}  // namespace qratio::estimator
