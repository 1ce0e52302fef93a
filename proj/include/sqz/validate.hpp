#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sqz/gaussian_model.hpp"

namespace sqz {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  std::string to_text() const;
};

struct ValidateOptions {
  std::size_t samples = std::size_t{1} << 16;
  std::uint64_t seed = 7;
  /// Moment model under test; swappable so a corrupted formula can be shown
  /// to trip the consistency check.
  std::function<StateMoments(const PolarForm&, double)> moments = analytic_moments;
};

/// Runs the analytic and Monte Carlo self-checks.
ValidationReport validate(const ValidateOptions& options = {});

}  // namespace sqz
