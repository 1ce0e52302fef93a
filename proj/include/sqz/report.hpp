#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sqz/gaussian_model.hpp"

namespace sqz {

struct ImproprietyReport {
  std::size_t d = 0;
  std::vector<double> singular_values;
  double r_norm = 0.0;  // spectral norm of R
  StateMoments moments;
  cplx det_gamma;
  cplx det_c;
  double impropriety = 0.0;
  /// Set when xi has the two-mode form r e^{i phi} [[0,1],[1,0]].
  std::optional<double> two_mode_r;
  std::optional<SeparabilityVerdict> separability;

  std::string to_text() const;
};

ImproprietyReport report_impropriety(const SqueezingSpec& spec, double sigma2);
ImproprietyReport report_impropriety(const std::filesystem::path& xi_file, double sigma2);

}  // namespace sqz
