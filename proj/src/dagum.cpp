#include "qratio/dagum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qratio {

void validate(const DagumParams& params) {
  const bool ok = std::isfinite(params.a) && params.a > 0.0 &&
                  std::isfinite(params.v) && params.v > 0.0 &&
                  std::isfinite(params.lambda) && params.lambda > 0.0;
  if (!ok) {
    throw std::domain_error(
        "dagum parameters must be finite and strictly positive");
  }
}

void validate(const RatioSpec& spec) {
  const bool ok = std::isfinite(spec.alpha) && std::isfinite(spec.beta) &&
                  0.0 < spec.alpha && spec.alpha < spec.beta &&
                  spec.beta < 1.0;
  if (!ok) {
    throw std::domain_error(
        "quantile orders must satisfy 0 < alpha < beta < 1");
  }
}

}  // namespace qratio

namespace qratio::dagum {

namespace {

// log(1 + exp(t)) without overflow on either side.
double softplus(double t) {
  if (t > 50.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

// log(exp(u) - 1) for u > 0; switches to u itself once exp(u) - 1 and
// exp(u) agree to double precision.
double log_expm1(double u) {
  if (u > 36.0) return u;
  return std::log(std::expm1(u));
}

// log((q^(-1/a) - 1)^-1), negated: log(q^(-1/a) - 1).
double log_qpow_term(double q, double a) {
  return log_expm1(-std::log(q) / a);
}

}  // namespace

double cdf(const DagumParams& params, double x) {
  validate(params);
  if (std::isnan(x) || x < 0.0) {
    throw std::domain_error("dagum cdf: x must be nonnegative");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double t = -params.v * (std::log(x) - std::log(params.lambda));
  return std::exp(-params.a * softplus(t));
}

double pdf(const DagumParams& params, double x) {
  validate(params);
  if (!(x > 0.0) || std::isinf(x)) {
    throw std::domain_error("dagum pdf: x must be positive and finite");
  }
  const double y = std::log(x) - std::log(params.lambda);
  const double lf = std::log(params.a) + std::log(params.v) -
                    std::log(params.lambda) + (params.a * params.v - 1.0) * y -
                    (params.a + 1.0) * softplus(params.v * y);
  return std::exp(lf);
}

double quantile(const DagumParams& params, double q) {
  validate(params);
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("dagum quantile: q must lie in (0, 1)");
  }
  return params.lambda * std::exp(-log_qpow_term(q, params.a) / params.v);
}

double ratio_of_quantiles(const DagumParams& params, const RatioSpec& spec) {
  validate(params);
  validate(spec);
  const double lgap =
      log_qpow_term(spec.alpha, params.a) - log_qpow_term(spec.beta, params.a);
  return std::exp(lgap / params.v);
}

double v_from_ratio(double a, double r, const RatioSpec& spec) {
  validate(spec);
  if (!(std::isfinite(a) && a > 0.0)) {
    throw std::domain_error("v_from_ratio: a must be positive");
  }
  if (!(std::isfinite(r) && r > 1.0)) {
    throw std::domain_error("v_from_ratio: ratio must exceed 1");
  }
  const double lgap = log_qpow_term(spec.alpha, a) - log_qpow_term(spec.beta, a);
  return lgap / std::log(r);
}

namespace {

// SplitMix64 finalizer; applied twice below to decorrelate seed and counter.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Top 53 bits mapped to the open interval (0, 1).
double to_unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double uniform_draw(std::uint64_t seed, std::uint64_t index) {
  return to_unit_open(mix64(seed ^ mix64(index)));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index ^ 0xD1B54A32D192ED03ull));
}

std::vector<double> sample(const DagumParams& params, std::size_t count,
                           std::uint64_t seed) {
  validate(params);
  if (count == 0) {
    throw std::domain_error("dagum sample: count must be at least 1");
  }
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = quantile(params, uniform_draw(seed, i));
  }
  return out;
}

}  // namespace qratio::dagum
