#pragma once

#include <stdexcept>
#include <string>

namespace qratio {

/// Thrown when an iterative numerical routine cannot produce a trustworthy
/// result: bracketing failed, an iteration cap was hit, or a residual check
/// rejected the computed value. Domain violations (bad arguments) throw
/// std::domain_error instead.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qratio
