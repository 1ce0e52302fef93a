// sqzsim: classical squeezed-light model with threshold detection.
//
//   sqzsim sweep --state bell-singlet --out sweep.csv --svg sweep.svg
//   sqzsim impropriety --xi-file xi.json --sigma2 0.5
//   sqzsim validate
//
// Exit codes: 0 success, 1 usage error, 2 runtime/numerical error,
// 3 validation failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqz/error.hpp"
#include "sqz/kernels.hpp"
#include "sqz/report.hpp"
#include "sqz/svg.hpp"
#include "sqz/sweep.hpp"
#include "sqz/validate.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitValidation = 3;

sqz::AlphaAmplitudes parse_alpha(const std::vector<double>& v) {
  if (v.size() != 8) throw sqz::InvalidArgument("--alpha expects 8 numbers: a1r,a1i,a2r,a2i,a3r,a3i,a4r,a4i");
  return {sqz::cplx{v[0], v[1]}, sqz::cplx{v[2], v[3]}, sqz::cplx{v[4], v[5]}, sqz::cplx{v[6], v[7]}};
}

int run_sweep_command(const sqz::SweepConfig& config, const std::string& out_csv,
                      const std::optional<std::string>& out_svg) {
  std::ofstream csv(out_csv);
  if (!csv) throw sqz::InputError("cannot open " + out_csv + " for writing");
  sqz::write_csv_header(csv);
  const auto rows = sqz::run_sweep(config, [&](const sqz::SweepRow& row) {
    sqz::write_csv_row(csv, row);
    csv.flush();
    std::cerr << "r=" << sqz::format_cell(row.r) << "  S=" << sqz::format_cell(row.s)
              << "  eta=" << sqz::format_cell(row.eta);
    if (!row.note.empty()) std::cerr << "  NA: " << row.note;
    std::cerr << '\n';
  });
  if (!csv) throw sqz::InputError("failed writing " + out_csv);
  std::cerr << "efficiency rule: " << sqz::to_string(config.eta_rule) << "\n";
  if (out_svg) sqz::emit_svg(rows, *out_svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical multi-mode squeezed light: impropriety and CHSH under threshold detection"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP worker count (0 = runtime default)")->check(CLI::NonNegativeNumber);

  sqz::SweepConfig config;
  std::string state_name = "bell-singlet";
  std::vector<double> alpha;
  std::string xi_file;
  std::string out_csv = "sweep.csv";
  std::string out_svg;
  std::string eta_rule = "union";

  auto* sweep = app.add_subcommand("sweep", "Bell statistic and efficiency versus squeezing magnitude r");
  sweep->add_option("--r-min", config.r_min, "First grid value")->capture_default_str();
  sweep->add_option("--r-max", config.r_max, "Last grid value")->capture_default_str();
  sweep->add_option("--r-steps", config.r_steps, "Number of grid points")->capture_default_str();
  sweep->add_option("--samples", config.samples, "Realizations per grid point")->capture_default_str();
  sweep->add_option("--seed", config.seed, "Base seed")->capture_default_str();
  sweep->add_option("--gamma", config.gamma, "Amplitude threshold")->capture_default_str();
  sweep->add_option("--sigma2", config.sigma2, "Source variance (0.5 = vacuum)")->capture_default_str();
  sweep->add_option("--state", state_name, "bell-singlet | separable-uniform | custom-file")
      ->check(CLI::IsMember({"bell-singlet", "separable-uniform", "custom-file"}))
      ->capture_default_str();
  sweep->add_option("--alpha", alpha, "Two-photon amplitudes a1r,a1i,...,a4i (overrides --state)")
      ->delimiter(',')
      ->expected(8);
  sweep->add_option("--xi-file", xi_file, "Squeezing matrix JSON for --state custom-file (scaled by r)");
  sweep->add_option("--out", out_csv, "CSV output path")->capture_default_str();
  sweep->add_option("--svg", out_svg, "Optional SVG plot path");
  sweep->add_option("--eta-rule", eta_rule, "union | per-side")
      ->check(CLI::IsMember({"union", "per-side"}))
      ->capture_default_str();

  std::string report_file;
  double report_sigma2 = 0.5;
  auto* impropriety = app.add_subcommand("impropriety", "Moments and impropriety of a squeezing matrix");
  impropriety->add_option("--xi-file", report_file, "Squeezing matrix JSON")->required();
  impropriety->add_option("--sigma2", report_sigma2, "Source variance")->capture_default_str();

  sqz::ValidateOptions vopts;
  auto* validate = app.add_subcommand("validate", "Run the analytic and Monte Carlo self-checks");
  validate->add_option("--samples", vopts.samples, "Monte Carlo sample size")->capture_default_str();
  validate->add_option("--seed", vopts.seed, "Seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    sqz::set_thread_count(threads);
    if (*sweep) {
      config.state = *sqz::parse_state_preset(state_name);
      if (!alpha.empty()) config.alpha = parse_alpha(alpha);
      if (!xi_file.empty()) config.xi_file = xi_file;
      config.eta_rule =
          eta_rule == "per-side" ? sqz::EfficiencyRule::PerSideExclusive : sqz::EfficiencyRule::UnionOfDetections;
      config.validate();
      return run_sweep_command(config, out_csv, out_svg.empty() ? std::nullopt : std::optional(out_svg));
    }
    if (*impropriety) {
      if (!(report_sigma2 > 0.0)) throw sqz::InvalidArgument("--sigma2 must be positive");
      std::cout << sqz::report_impropriety(std::filesystem::path(report_file), report_sigma2).to_text();
      return 0;
    }
    if (*validate) {
      const sqz::ValidationReport report = sqz::validate(vopts);
      std::cout << report.to_text();
      return report.all_passed() ? 0 : kExitValidation;
    }
  } catch (const sqz::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
