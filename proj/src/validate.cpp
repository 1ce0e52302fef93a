#include "sqz/validate.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "sqz/detection.hpp"
#include "sqz/kernels.hpp"
#include "sqz/linalg.hpp"
#include "sqz/random_matrices.hpp"

namespace sqz {
namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Check {
  std::string name;
  double worst = 0.0;  // worst observed error / tolerance ratio
  bool ok = true;
  std::string note;

  void record(double error, double tol) {
    const double ratio = tol > 0.0 ? error / tol : (error > 0.0 ? INFINITY : 0.0);
    worst = std::max(worst, ratio);
    if (!(error <= tol)) ok = false;
  }
  void require(bool cond, const std::string& why) {
    if (!cond) {
      ok = false;
      if (note.empty()) note = why;
    }
  }
  CheckResult result() const {
    std::string detail = "worst error/tolerance = " + sci(worst);
    if (!note.empty()) detail += "; " + note;
    return {name, ok, detail};
  }
};

double monte_carlo_tol(const ComplexMatrix& gamma, std::size_t i, std::size_t j, std::size_t n) {
  // Var(b_i conj(b_j)) and Var(b_i b_j) are both at most 2 Gamma_ii Gamma_jj
  // for a zero-mean complex Gaussian.
  return 5.0 / std::sqrt(static_cast<double>(n)) *
         std::sqrt(2.0 * gamma(i, i).real() * gamma(j, j).real());
}

template <typename Body>
CheckResult run_check(const std::string& name, Body body) {
  Check c;
  c.name = name;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.note = std::string("exception: ") + e.what();
  }
  return c.result();
}

}  // namespace

bool ValidationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
  std::size_t passed = 0;
  for (const auto& c : checks) passed += c.passed;
  out << passed << "/" << checks.size() << " checks passed\n";
  return out.str();
}

ValidationReport validate(const ValidateOptions& options) {
  ValidationReport report;
  auto& out = report.checks;
  const std::size_t n = options.samples;

  out.push_back(run_check("hyperbolic identity cosh(R)^2 - sinh(R)^2 = I", [&](Check& c) {
    MatrixSampler gen(options.seed);
    for (int k = 0; k < 8; ++k) {
      const ComplexMatrix r = gen.hermitian_psd(4, 2.0);
      const ComplexMatrix ch = hermitian_matrix_function(r, MatrixFunction::Cosh);
      const ComplexMatrix sh = hermitian_matrix_function(r, MatrixFunction::Sinh);
      c.record(max_abs_diff(ch * ch - sh * sh, ComplexMatrix::identity(4)), 1e-9);
    }
  }));

  out.push_back(run_check("polar form R Hermitian PSD, Q unitary, RQ = xi", [&](Check& c) {
    MatrixSampler gen(options.seed + 1);
    for (int k = 0; k < 12; ++k) {
      const std::size_t d = 2 + static_cast<std::size_t>(k % 5);
      const ComplexMatrix xi = gen.symmetric(d, 2.0);
      const PolarForm p = polar_decompose(xi);
      const double tol = 1e-9 * (1.0 + frobenius_norm(xi));
      c.record(max_abs_diff(p.r_part, p.r_part.adjoint()), tol);
      c.record(max_abs_diff(p.q_part.adjoint() * p.q_part, ComplexMatrix::identity(d)), tol);
      c.record(max_abs_diff(p.r_part * p.q_part, xi), tol);
      c.record(std::max(0.0, -eig_hermitian(p.r_part).values.back()), tol);
    }
  }));

  out.push_back(run_check("singular values invariant under unitary multiplication", [&](Check& c) {
    MatrixSampler gen(options.seed + 2);
    for (int k = 0; k < 6; ++k) {
      const ComplexMatrix a = gen.ginibre(4);
      const auto d0 = svd(a).d;
      const auto d1 = svd(gen.unitary(4) * a * gen.unitary(4)).d;
      for (std::size_t i = 0; i < d0.size(); ++i) c.record(std::abs(d0[i] - d1[i]), 1e-9);
    }
  }));

  out.push_back(run_check("det(AB) = det(A) det(B)", [&](Check& c) {
    MatrixSampler gen(options.seed + 3);
    for (int k = 0; k < 6; ++k) {
      const ComplexMatrix a = gen.ginibre(4);
      const ComplexMatrix b = gen.ginibre(4);
      const cplx lhs = determinant(a * b);
      const cplx rhs = determinant(a) * determinant(b);
      c.record(std::abs(lhs - rhs), 1e-8 * std::abs(rhs));
    }
  }));

  out.push_back(run_check("impropriety of R = rI equals tanh(2r)^(2d)", [&](Check& c) {
    MatrixSampler gen(options.seed + 4);
    for (std::size_t d : {1u, 2u, 4u})
      for (double r : {0.1, 0.5, 1.0, 2.0})
        for (double sigma2 : {0.5, 1.0})
          for (int k = 0; k < 3; ++k) {
            const PolarForm p{r * ComplexMatrix::identity(d), gen.symmetric_unitary(d)};
            c.record(std::abs(impropriety(options.moments(p, sigma2)) - impropriety_isotropic(r, d)), 1e-9);
          }
  }));

  out.push_back(run_check("impropriety within [0, 1] and Gamma >= sigma2 I", [&](Check& c) {
    MatrixSampler gen(options.seed + 5);
    for (int k = 0; k < 12; ++k) {
      const std::size_t d = 1 + static_cast<std::size_t>(k % 6);
      const double sigma2 = gen.uniform(0.5, 2.0);
      const StateMoments m = options.moments(polar_decompose(gen.symmetric(d, 2.0)), sigma2);
      const double value = impropriety(m);
      c.require(value >= 0.0 && value <= 1.0, "impropriety outside [0, 1]");
      c.record(std::max(0.0, sigma2 - eig_hermitian(m.gamma).values.back()), 1e-9);
      c.record(frobenius_norm(m.c - m.c.transpose()), 1e-9 * (1.0 + frobenius_norm(m.c)));
    }
  }));

  out.push_back(run_check("augmented-covariance density matches the R = rI closed form", [&](Check& c) {
    MatrixSampler gen(options.seed + 6);
    for (std::size_t d : {2u, 4u})
      for (double r : {0.3, 1.0}) {
        const double sigma2 = 0.5;
        const ComplexMatrix q = gen.symmetric_unitary(d);
        const StateMoments m = options.moments(PolarForm{r * ComplexMatrix::identity(d), q}, sigma2);
        for (int k = 0; k < 20; ++k) {
          std::vector<cplx> beta(d);
          for (auto& z : beta) z = gen.gaussian();
          c.record(std::abs(log_density(beta, m) - log_density_isotropic(beta, r, q, sigma2)), 1e-9);
        }
      }
  }));

  out.push_back(run_check("single-mode density integrates to one", [&](Check& c) {
    const double r = 0.5;
    const double sigma2 = 0.5;
    const PolarForm p{r * ComplexMatrix::identity(1), ComplexMatrix{{std::polar(1.0, 0.7)}}};
    const StateMoments m = options.moments(p, sigma2);
    const double half_width = 8.0 * std::sqrt(sigma2 * std::exp(2.0 * r) / 2.0);
    const int cells = 300;
    const double h = 2.0 * half_width / cells;
    double total = 0.0;
    for (int i = 0; i < cells; ++i)
      for (int j = 0; j < cells; ++j) {
        const cplx beta{-half_width + (i + 0.5) * h, -half_width + (j + 0.5) * h};
        total += std::exp(log_density(std::span<const cplx>(&beta, 1), m));
      }
    c.record(std::abs(total * h * h - 1.0), 1e-3);
  }));

  out.push_back(run_check("vacuum source is proper with covariance sigma2 I", [&](Check& c) {
    const double sigma2 = 0.5;
    const SampleBatch a = sample_vacuum(4, n, sigma2, options.seed + 7);
    const StateMoments emp = empirical_moments(a);
    const ComplexMatrix expect = sigma2 * ComplexMatrix::identity(4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        const double tol = monte_carlo_tol(expect, i, j, n);
        c.record(std::abs(emp.gamma(i, j) - expect(i, j)), tol);
        c.record(std::abs(emp.c(i, j)), tol);
      }
  }));

  out.push_back(run_check("empirical moments of the transform match the analytic moments", [&](Check& c) {
    MatrixSampler gen(options.seed + 8);
    for (int k = 0; k < 4; ++k) {
      const double sigma2 = 0.5;
      const PolarForm p = polar_decompose(gen.symmetric(4, 2.0));
      const StateMoments ana = options.moments(p, sigma2);
      const StateMoments emp =
          empirical_moments(bogoliubov_transform(sample_vacuum(4, n, sigma2, options.seed + 100 + k), p));
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
          const double tol = monte_carlo_tol(ana.gamma, i, j, n);
          c.record(std::abs(emp.gamma(i, j) - ana.gamma(i, j)), tol);
          c.record(std::abs(emp.c(i, j) - ana.c(i, j)), tol);
        }
    }
  }));

  out.push_back(run_check("setting rotations take each observable to Z", [&](Check& c) {
    const ComplexMatrix z{{1.0, 0.0}, {0.0, -1.0}};
    for (SettingLabel l : {SettingLabel::A1, SettingLabel::A2, SettingLabel::B1, SettingLabel::B2}) {
      const ComplexMatrix u = setting_rotation(l).rotation;
      c.record(max_abs_diff(u.adjoint() * observable(l) * u, z), 1e-12);
    }
  }));

  out.push_back(run_check("two-mode separability flips at r = log(2 sigma2) / 2", [&](Check& c) {
    for (double sigma2 : {0.5, 0.75, 1.0, 2.0}) {
      const double t = separability_threshold(sigma2, 0.0).threshold_r;
      c.record(std::abs(t - std::max(0.0, 0.5 * std::log(2.0 * sigma2))), 1e-15);
      c.require(separability_threshold(sigma2, t + 1e-6).entangled, "not entangled just above threshold");
      c.require(!separability_threshold(sigma2, t - 1e-6).entangled, "entangled just below threshold");
    }
  }));

  out.push_back(run_check("unsqueezed source gives null correlations", [&](Check& c) {
    const BellResult res = run_chsh(two_photon_squeezing(singlet_alpha(), 0.0), 0.5, 1.0, n, options.seed + 9);
    for (std::size_t p = 0; p < 4; ++p) {
      c.require(res.correlations[p].has_value(), "undefined correlation");
      if (res.correlations[p]) c.record(std::abs(*res.correlations[p]), 5.0 * *res.stderrs[p]);
    }
  }));

  out.push_back(run_check("coincidence tallies are exclusive and bounded by singles", [&](Check& c) {
    const BellResult res = run_chsh(two_photon_squeezing(singlet_alpha(), 1.0), 0.5, 1.0, n, options.seed + 10);
    for (const auto& k : res.counts) {
      c.require(k.coincidences() <= std::min(k.n_single_a, k.n_single_b), "coincidences exceed singles");
      c.require(std::min(k.n_single_a, k.n_single_b) <= k.n_total, "singles exceed total");
      c.require(k.n_total == n, "total differs from the sample count");
    }
  }));

  out.push_back(run_check("seeded runs are reproducible and kernels agree", [&](Check& c) {
    const SqueezingSpec spec = two_photon_squeezing(singlet_alpha(), 1.2);
    const BellResult a = run_chsh(spec, 0.5, 1.0, n, options.seed + 11);
    const BellResult b = run_chsh(spec, 0.5, 1.0, n, options.seed + 11);
    c.require(a.counts == b.counts, "repeat run differs");
    const auto op = BogoliubovOperator::from_polar(polar_decompose(spec.xi()));
    const auto bank = DetectorBank::chsh(1.0);
    const PairCounts ser = serial::stream_chsh(n, std::sqrt(0.5), options.seed + 11, op, bank);
    c.require(ser == a.counts, "serial reference differs from the parallel kernel");
  }));

  return report;
}

}  // namespace sqz
