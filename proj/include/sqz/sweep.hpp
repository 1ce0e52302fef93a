#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sqz/detection.hpp"
#include "sqz/gaussian_model.hpp"

namespace sqz {

enum class StatePreset { BellSinglet, SeparableUniform, CustomFile };

std::string_view to_string(StatePreset preset);
std::optional<StatePreset> parse_state_preset(std::string_view name);

struct SweepConfig {
  double r_min = 0.0;
  double r_max = 3.0;
  std::size_t r_steps = 31;
  std::size_t samples = std::size_t{1} << 20;
  std::uint64_t seed = 20210403;
  double gamma = 1.0;
  double sigma2 = 0.5;
  StatePreset state = StatePreset::BellSinglet;
  std::optional<AlphaAmplitudes> alpha;  // overrides the preset
  std::optional<std::filesystem::path> xi_file;
  EfficiencyRule eta_rule = EfficiencyRule::UnionOfDetections;

  /// Throws InvalidArgument on inconsistent settings.
  void validate() const;
};

/// One grid point. Empty optionals are written as NA; `note` says why.
struct SweepRow {
  double r = 0.0;
  std::array<std::optional<double>, 4> c;
  std::optional<double> s;
  std::optional<double> s_stderr;
  std::optional<double> eta;
  std::uint64_t n_coincidence_min = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::string note;
};

inline constexpr std::string_view kSweepCsvHeader = "r,c11,c12,c21,c22,s,s_stderr,eta,n_coincidence_min,samples,seed";

/// Grid point i of the sweep; endpoints are exact.
double grid_point(const SweepConfig& config, std::size_t i);

/// Per-row seed: rng::mix(base_seed, grid_index).
std::uint64_t row_seed(std::uint64_t base_seed, std::size_t index);

/// Squeezing matrix for the configured state at magnitude r. Presets and
/// --alpha go through two_photon_squeezing; a custom file is scaled as r * xi_file.
SqueezingSpec build_squeezing(const SweepConfig& config, double r, const SqueezingSpec* custom = nullptr);

using RowSink = std::function<void(const SweepRow&)>;

/// Runs the grid in order, handing each finished row to `sink` (if any).
std::vector<SweepRow> run_sweep(const SweepConfig& config, const RowSink& sink = {});

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const SweepRow& row);

/// 17 significant digits, or "NA".
std::string format_cell(std::optional<double> v);

}  // namespace sqz
