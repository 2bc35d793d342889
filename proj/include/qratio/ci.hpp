#pragma once

#include "qratio/estimator.hpp"
#include "qratio/types.hpp"

namespace qratio {

/// How the total miss probability 1 - level is split between the two tails:
/// over_risk is the probability mass assigned above the upper endpoint, the
/// remainder sits below the lower endpoint.
struct RiskSplit {
  double over_risk = 0.0;
};

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;
  double under_risk = 0.0;  // P(true ratio < lower), asymptotically
  double over_risk = 0.0;   // P(true ratio > upper), asymptotically
  double length = 0.0;
};

enum class IntervalMethod { standard, shortest };

}  // namespace qratio

namespace qratio::ci {

/// Endpoint of the asymptotic confidence construction at tail index gamma:
/// the solution rho > 1 of sqrt(n) (r* - rho) = u_gamma w(a) rho log(rho),
/// where u_gamma is the standard normal gamma-quantile. gamma > 1/2 gives a
/// point below r* (a lower endpoint), gamma < 1/2 one above. Evaluated in
/// closed form through the Lambert W function, picking the branch that
/// matches the sign of u_gamma; a residual check guards the result. Throws
/// std::domain_error for gamma outside (0,1) or gamma == 1/2, and
/// numerical_error when no real solution exists (gamma too extreme for the
/// sample size) or the residual check fails.
double endpoint_closed_form(double gamma, const RatioEstimate& est);

/// Same endpoint computed independently by bracketed root finding on the
/// defining equation (Brent). The bracket starts at [1 + 1e-12, 10] and the
/// upper end doubles until the function changes sign; numerical_error if no
/// sign change is found by 2^40.
double endpoint_root_find(double gamma, const RatioEstimate& est);

/// Closed form with automatic fallback to root finding if the residual
/// check rejects the closed-form value.
double endpoint(double gamma, const RatioEstimate& est);

/// Interval with the given risk split: lower endpoint at gamma = level +
/// over_risk, upper at gamma = over_risk. Requires
/// 0 < over_risk < 1 - level.
ConfidenceInterval interval_from_split(const RatioEstimate& est, double level,
                                       const RiskSplit& split);

/// The usual equal-tailed interval: over_risk = (1 - level) / 2.
ConfidenceInterval standard_interval(const RatioEstimate& est, double level);

/// Length of the interval with the given risk split, without assembling it.
double interval_length(const RatioEstimate& est, double level,
                       const RiskSplit& split);

/// Shortest interval at the given level: minimizes interval_length over the
/// admissible risk splits (Brent minimizer, absolute tolerance 1e-12 in the
/// split). The result is never longer than the standard interval.
ConfidenceInterval shortest_interval(const RatioEstimate& est, double level);

}  // namespace qratio::ci
