#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "sqz/complex_matrix.hpp"
#include "sqz/gaussian_model.hpp"
#include "sqz/sample_batch.hpp"

namespace sqz {

enum class SettingLabel { A1, A2, B1, B2 };

std::string_view to_string(SettingLabel label);

/// Rotation U taking the setting's observable to Z; amplitudes are mapped
/// as U^H (h, v) before thresholding.
struct MeasurementSetting {
  SettingLabel label = SettingLabel::A1;
  ComplexMatrix rotation;
};

enum class SideOutcome { Plus, Minus, None, Double };

/// Tallies for one setting pair. Singles are exclusive single-channel clicks
/// on one side; `detect_*` count any click (doubles included).
struct EventCounts {
  std::uint64_t n_hh = 0;
  std::uint64_t n_hv = 0;
  std::uint64_t n_vh = 0;
  std::uint64_t n_vv = 0;
  std::uint64_t n_single_a = 0;
  std::uint64_t n_single_b = 0;
  std::uint64_t n_detect_a = 0;
  std::uint64_t n_detect_b = 0;
  std::uint64_t n_detect_either = 0;
  std::uint64_t n_total = 0;

  std::uint64_t coincidences() const { return n_hh + n_hv + n_vh + n_vv; }

  EventCounts& operator+=(const EventCounts& o);
  friend bool operator==(const EventCounts&, const EventCounts&) = default;
};

/// Setting pairs in the order (A1,B1), (A1,B2), (A2,B1), (A2,B2), i.e. the
/// correlations c11, c12, c21, c22.
using PairCounts = std::array<EventCounts, 4>;
inline constexpr std::array<std::array<SettingLabel, 2>, 4> kSettingPairs{{
    {SettingLabel::A1, SettingLabel::B1},
    {SettingLabel::A1, SettingLabel::B2},
    {SettingLabel::A2, SettingLabel::B1},
    {SettingLabel::A2, SettingLabel::B2},
}};

/// How the coincidence efficiency is normalized.
enum class EfficiencyRule {
  /// coincidences / realizations with any click on A or on B, minimized
  /// over the four setting pairs.
  UnionOfDetections,
  /// coincidences / exclusive singles on one side, minimized over setting
  /// pairs and both sides.
  PerSideExclusive,
};

std::string_view to_string(EfficiencyRule rule);

struct BellResult {
  std::array<std::optional<double>, 4> correlations;  // c11, c12, c21, c22
  std::array<std::optional<double>, 4> stderrs;
  std::optional<double> s;
  std::optional<double> s_stderr;
  std::optional<double> eta;
  EfficiencyRule eta_rule = EfficiencyRule::UnionOfDetections;
  PairCounts counts{};

  std::uint64_t min_coincidences() const;
};

/// The observable measured by `label`: Z, X, (Z+X)/sqrt2, (Z-X)/sqrt2.
ComplexMatrix observable(SettingLabel label);

MeasurementSetting setting_rotation(SettingLabel label);

/// Strict |b| > gamma on each channel.
SideOutcome threshold_detect(cplx h, cplx v, double gamma);

/// Tallies one setting pair over a 4-mode batch in (AH, AV, BH, BV) order.
EventCounts classify_events(const SampleBatch& b, const MeasurementSetting& a_side,
                            const MeasurementSetting& b_side, double gamma);

/// (n_hh - n_hv - n_vh + n_vv) / coincidences; nullopt when there are none.
std::optional<double> correlation(const EventCounts& counts);

/// sqrt((1 - c^2) / coincidences); nullopt when there are none.
std::optional<double> correlation_stderr(const EventCounts& counts);

/// |c11 + c12| + |c21 - c22|. Inputs must lie in [-1, 1].
double bell_statistic(double c11, double c12, double c21, double c22);

/// nullopt when a denominator is zero.
std::optional<double> efficiency(std::span<const EventCounts, 4> counts,
                                 EfficiencyRule rule = EfficiencyRule::UnionOfDetections);

/// Full CHSH estimate for a 4-mode squeezing matrix. One vacuum sample of n
/// realizations is shared by all four setting pairs.
BellResult run_chsh(const SqueezingSpec& spec, double sigma2, double gamma, std::size_t n, std::uint64_t seed,
                    EfficiencyRule rule = EfficiencyRule::UnionOfDetections);

/// Assembles correlations, S and eta from raw tallies.
BellResult bell_result_from_counts(const PairCounts& counts, EfficiencyRule rule);

}  // namespace sqz
