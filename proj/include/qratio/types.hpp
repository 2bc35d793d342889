#pragma once

namespace qratio {

/// Dagum distribution parameters. CDF is F(x) = (1 + (x/lambda)^-v)^-a for
/// x > 0, with shape parameters a, v > 0 and scale lambda > 0.
struct DagumParams {
  double a = 1.0;
  double v = 1.0;
  double lambda = 1.0;
};

/// A pair of quantile orders 0 < alpha < beta < 1 identifying the ratio
/// Q(beta) / Q(alpha).
struct RatioSpec {
  double alpha = 0.2;
  double beta = 0.8;
};

/// Throws std::domain_error unless all three parameters are finite and
/// strictly positive.
void validate(const DagumParams& params);

/// Throws std::domain_error unless 0 < alpha < beta < 1.
void validate(const RatioSpec& spec);

}  // namespace qratio
