#include "sqz/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sqz/error.hpp"
#include "sqz/kernels.hpp"

namespace sqz {

std::string_view to_string(SettingLabel label) {
  switch (label) {
    case SettingLabel::A1: return "A1";
    case SettingLabel::A2: return "A2";
    case SettingLabel::B1: return "B1";
    case SettingLabel::B2: return "B2";
  }
  return "?";
}

std::string_view to_string(EfficiencyRule rule) {
  switch (rule) {
    case EfficiencyRule::UnionOfDetections: return "union-of-detections";
    case EfficiencyRule::PerSideExclusive: return "per-side-exclusive";
  }
  return "?";
}

EventCounts& EventCounts::operator+=(const EventCounts& o) {
  n_hh += o.n_hh;
  n_hv += o.n_hv;
  n_vh += o.n_vh;
  n_vv += o.n_vv;
  n_single_a += o.n_single_a;
  n_single_b += o.n_single_b;
  n_detect_a += o.n_detect_a;
  n_detect_b += o.n_detect_b;
  n_detect_either += o.n_detect_either;
  n_total += o.n_total;
  return *this;
}

std::uint64_t BellResult::min_coincidences() const {
  std::uint64_t m = counts[0].coincidences();
  for (const auto& c : counts) m = std::min(m, c.coincidences());
  return m;
}

ComplexMatrix observable(SettingLabel label) {
  const ComplexMatrix z{{1.0, 0.0}, {0.0, -1.0}};
  const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  const double h = 1.0 / std::numbers::sqrt2;
  switch (label) {
    case SettingLabel::A1: return z;
    case SettingLabel::A2: return x;
    case SettingLabel::B1: return h * (z + x);
    case SettingLabel::B2: return h * (z - x);
  }
  throw InvalidArgument("observable: unknown setting label");
}

MeasurementSetting setting_rotation(SettingLabel label) {
  const double c = std::cos(std::numbers::pi / 8.0);
  const double s = std::sin(std::numbers::pi / 8.0);
  const double h = 1.0 / std::numbers::sqrt2;
  switch (label) {
    case SettingLabel::A1: return {label, ComplexMatrix::identity(2)};
    case SettingLabel::A2: return {label, ComplexMatrix{{h, h}, {h, -h}}};
    case SettingLabel::B1: return {label, ComplexMatrix{{c, s}, {s, -c}}};
    case SettingLabel::B2: return {label, ComplexMatrix{{c, -s}, {-s, -c}}};
  }
  throw InvalidArgument("setting_rotation: unknown setting label");
}

Rotation2 rotation_adjoint(const MeasurementSetting& setting) {
  const ComplexMatrix& u = setting.rotation;
  if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u, kHermitianTol)) {
    throw InvalidArgument("measurement rotation must be a 2x2 unitary");
  }
  return {std::conj(u(0, 0)), std::conj(u(1, 0)), std::conj(u(0, 1)), std::conj(u(1, 1))};
}

DetectorBank DetectorBank::chsh(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidArgument("threshold gamma must be finite and >= 0");
  DetectorBank bank;
  bank.alice = {rotation_adjoint(setting_rotation(SettingLabel::A1)), rotation_adjoint(setting_rotation(SettingLabel::A2))};
  bank.bob = {rotation_adjoint(setting_rotation(SettingLabel::B1)), rotation_adjoint(setting_rotation(SettingLabel::B2))};
  bank.gamma = gamma;
  return bank;
}

SideOutcome threshold_detect(cplx h, cplx v, double gamma) {
  const double g2 = gamma * gamma;
  const bool hit_h = std::norm(h) > g2;
  const bool hit_v = std::norm(v) > g2;
  if (hit_h && hit_v) return SideOutcome::Double;
  if (hit_h) return SideOutcome::Plus;
  if (hit_v) return SideOutcome::Minus;
  return SideOutcome::None;
}

EventCounts classify_events(const SampleBatch& b, const MeasurementSetting& a_side, const MeasurementSetting& b_side,
                            double gamma) {
  if (b.d != 4) throw InvalidArgument("classify_events: expected modes (AH, AV, BH, BV)");
  if (!(gamma >= 0.0)) throw InvalidArgument("classify_events: gamma must be >= 0");
  return parallel::tally_pair(b.amplitudes, b.n, rotation_adjoint(a_side), rotation_adjoint(b_side), gamma);
}

std::optional<double> correlation(const EventCounts& counts) {
  const std::uint64_t total = counts.coincidences();
  if (total == 0) return std::nullopt;
  const double agree = static_cast<double>(counts.n_hh + counts.n_vv);
  const double disagree = static_cast<double>(counts.n_hv + counts.n_vh);
  return (agree - disagree) / static_cast<double>(total);
}

std::optional<double> correlation_stderr(const EventCounts& counts) {
  const auto c = correlation(counts);
  if (!c) return std::nullopt;
  return std::sqrt(std::max(0.0, 1.0 - *c * *c) / static_cast<double>(counts.coincidences()));
}

double bell_statistic(double c11, double c12, double c21, double c22) {
  for (double c : {c11, c12, c21, c22}) {
    if (!(c >= -1.0 && c <= 1.0)) throw InvalidArgument("bell_statistic: correlations must lie in [-1, 1]");
  }
  return std::abs(c11 + c12) + std::abs(c21 - c22);
}

std::optional<double> efficiency(std::span<const EventCounts, 4> counts, EfficiencyRule rule) {
  double eta = 1.0;
  for (const auto& c : counts) {
    const double coinc = static_cast<double>(c.coincidences());
    if (rule == EfficiencyRule::UnionOfDetections) {
      if (c.n_detect_either == 0) return std::nullopt;
      eta = std::min(eta, coinc / static_cast<double>(c.n_detect_either));
    } else {
      if (c.n_single_a == 0 || c.n_single_b == 0) return std::nullopt;
      eta = std::min({eta, coinc / static_cast<double>(c.n_single_a), coinc / static_cast<double>(c.n_single_b)});
    }
  }
  return eta;
}

BellResult bell_result_from_counts(const PairCounts& counts, EfficiencyRule rule) {
  BellResult res;
  res.counts = counts;
  res.eta_rule = rule;
  bool all_defined = true;
  double var = 0.0;
  for (std::size_t p = 0; p < 4; ++p) {
    res.correlations[p] = correlation(counts[p]);
    res.stderrs[p] = correlation_stderr(counts[p]);
    if (!res.correlations[p]) {
      all_defined = false;
      continue;
    }
    var += *res.stderrs[p] * *res.stderrs[p];
  }
  if (all_defined) {
    const auto& c = res.correlations;
    res.s = bell_statistic(*c[0], *c[1], *c[2], *c[3]);
    res.s_stderr = std::sqrt(var);
  }
  res.eta = efficiency(std::span<const EventCounts, 4>(counts), rule);
  return res;
}

BellResult run_chsh(const SqueezingSpec& spec, double sigma2, double gamma, std::size_t n, std::uint64_t seed,
                    EfficiencyRule rule) {
  if (spec.dim() != 4) throw InvalidArgument("run_chsh: squeezing matrix must be 4x4 (AH, AV, BH, BV)");
  if (n == 0) throw InvalidArgument("run_chsh: need at least one realization");
  if (!(sigma2 > 0.0)) throw InvalidArgument("run_chsh: sigma2 must be positive");
  const auto op = BogoliubovOperator::from_polar(polar_decompose(spec.xi()));
  const auto bank = DetectorBank::chsh(gamma);
  return bell_result_from_counts(parallel::stream_chsh(n, std::sqrt(sigma2), seed, op, bank), rule);
}

}  // namespace sqz
