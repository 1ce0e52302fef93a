#include "sqz/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "sqz/error.hpp"
#include "sqz/rng.hpp"
#include "sqz/xi_io.hpp"

namespace sqz {

std::string_view to_string(StatePreset preset) {
  switch (preset) {
    case StatePreset::BellSinglet: return "bell-singlet";
    case StatePreset::SeparableUniform: return "separable-uniform";
    case StatePreset::CustomFile: return "custom-file";
  }
  return "?";
}

std::optional<StatePreset> parse_state_preset(std::string_view name) {
  if (name == "bell-singlet") return StatePreset::BellSinglet;
  if (name == "separable-uniform") return StatePreset::SeparableUniform;
  if (name == "custom-file") return StatePreset::CustomFile;
  return std::nullopt;
}

void SweepConfig::validate() const {
  if (!std::isfinite(r_min) || !std::isfinite(r_max) || r_min > r_max) throw InvalidArgument("sweep: need r_min <= r_max");
  if (r_min < 0.0) throw InvalidArgument("sweep: r must be non-negative");
  if (r_steps < 1) throw InvalidArgument("sweep: r_steps must be >= 1");
  if (samples < 1) throw InvalidArgument("sweep: samples must be >= 1");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidArgument("sweep: gamma must be >= 0");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw InvalidArgument("sweep: sigma2 must be > 0");
  if (state == StatePreset::CustomFile && !xi_file && !alpha) {
    throw InvalidArgument("sweep: --state custom-file needs --xi-file");
  }
}

double grid_point(const SweepConfig& config, std::size_t i) {
  if (config.r_steps <= 1) return config.r_min;
  const double t = static_cast<double>(i) / static_cast<double>(config.r_steps - 1);
  return std::lerp(config.r_min, config.r_max, t);
}

std::uint64_t row_seed(std::uint64_t base_seed, std::size_t index) { return rng::mix(base_seed, index); }

SqueezingSpec build_squeezing(const SweepConfig& config, double r, const SqueezingSpec* custom) {
  if (config.alpha) return two_photon_squeezing(*config.alpha, r);
  switch (config.state) {
    case StatePreset::BellSinglet: return two_photon_squeezing(singlet_alpha(), r);
    case StatePreset::SeparableUniform: return two_photon_squeezing(separable_uniform_alpha(), r);
    case StatePreset::CustomFile: {
      if (custom == nullptr) throw InvalidArgument("sweep: custom-file state without a loaded matrix");
      return SqueezingSpec(r * custom->xi());
    }
  }
  throw InvalidArgument("sweep: unknown state preset");
}

std::vector<SweepRow> run_sweep(const SweepConfig& config, const RowSink& sink) {
  config.validate();
  std::optional<SqueezingSpec> custom;
  if (config.state == StatePreset::CustomFile && !config.alpha) {
    custom = load_xi_file(*config.xi_file);
    if (custom->dim() != 4) throw InputError("sweep: the CHSH scheme needs a 4x4 xi (AH, AV, BH, BV)");
  }

  std::vector<SweepRow> rows;
  rows.reserve(config.r_steps);
  for (std::size_t i = 0; i < config.r_steps; ++i) {
    SweepRow row;
    row.r = grid_point(config, i);
    row.samples = config.samples;
    row.seed = row_seed(config.seed, i);
    const SqueezingSpec spec = build_squeezing(config, row.r, custom ? &*custom : nullptr);
    const BellResult res = run_chsh(spec, config.sigma2, config.gamma, config.samples, row.seed, config.eta_rule);
    row.c = res.correlations;
    row.s = res.s;
    row.s_stderr = res.s_stderr;
    row.eta = res.eta;
    row.n_coincidence_min = res.min_coincidences();
    if (!row.s) row.note = "undefined correlation: no coincidences for at least one setting pair";
    if (!row.eta) row.note += (row.note.empty() ? "" : "; ") + std::string("undefined efficiency: zero detections");
    if (sink) sink(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_cell(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

void write_csv_header(std::ostream& out) { out << kSweepCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const SweepRow& row) {
  out << format_cell(row.r);
  for (const auto& c : row.c) out << ',' << format_cell(c);
  out << ',' << format_cell(row.s) << ',' << format_cell(row.s_stderr) << ',' << format_cell(row.eta) << ','
      << row.n_coincidence_min << ',' << row.samples << ',' << row.seed << '\n';
}

}  // namespace sqz
