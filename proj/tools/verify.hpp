#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nnts::tool {

struct VerifyOptions {
  std::uint64_t seed = 0;
  /// Test hook: evaluate analytic gradients at coefficients moved by this
  /// amount, which must make the gradient checks fail.
  double gradient_perturbation = 0.0;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Invariant checks on synthetic data: normalization, nonnegativity, cdf
/// endpoints, gradients vs finite differences, Fisher information null
/// space, scoring vs Nelder-Mead optima, reproducibility.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace nnts::tool
