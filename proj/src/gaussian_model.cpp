#include "sqz/gaussian_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sqz/error.hpp"
#include "sqz/kernels.hpp"

namespace sqz {
namespace {

std::vector<cplx> to_vector(const ComplexMatrix& m) { return {m.entries().begin(), m.entries().end()}; }

void require_positive_sigma2(double sigma2, const char* who) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw InvalidArgument(std::string(who) + ": sigma2 must be positive");
}

ComplexMatrix augmented_covariance(const StateMoments& m) {
  const std::size_t d = m.gamma.rows();
  ComplexMatrix aug(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      aug(i, j) = m.gamma(i, j);
      aug(i, j + d) = m.c(i, j);
      aug(i + d, j) = std::conj(m.c(i, j));
      aug(i + d, j + d) = std::conj(m.gamma(i, j));
    }
  return aug;
}

}  // namespace

SqueezingSpec::SqueezingSpec(ComplexMatrix xi) : xi_(std::move(xi)) {
  if (!xi_.is_square() || xi_.rows() == 0) throw InvalidArgument("squeezing matrix must be square and non-empty");
  if (!xi_.all_finite()) throw InvalidArgument("squeezing matrix has non-finite entries");
  if (!is_symmetric(xi_)) throw InvalidArgument("squeezing matrix is not symmetric");
}

BogoliubovOperator BogoliubovOperator::from_polar(const PolarForm& polar) {
  const ComplexMatrix ch = hermitian_matrix_function(polar.r_part, MatrixFunction::Cosh);
  const ComplexMatrix sh = hermitian_matrix_function(polar.r_part, MatrixFunction::Sinh);
  return {polar.dim(), to_vector(ch), to_vector(sh * polar.q_part)};
}

SampleBatch sample_vacuum(std::size_t d, std::size_t n, double sigma2, std::uint64_t seed) {
  if (d == 0 || n == 0) throw InvalidArgument("sample_vacuum: need at least one mode and one realization");
  require_positive_sigma2(sigma2, "sample_vacuum");
  SampleBatch batch{n, d, std::vector<cplx>(n * d), seed, sigma2};
  parallel::fill_vacuum(batch.amplitudes, n, d, std::sqrt(sigma2), seed);
  return batch;
}

SampleBatch bogoliubov_transform(const SampleBatch& a, const PolarForm& polar) {
  if (a.d != polar.dim()) throw InvalidArgument("bogoliubov_transform: mode count differs from the polar form");
  const auto op = BogoliubovOperator::from_polar(polar);
  SampleBatch b{a.n, a.d, std::vector<cplx>(a.amplitudes.size()), a.seed, a.sigma2};
  parallel::apply_bogoliubov(a.amplitudes, b.amplitudes, a.n, op);
  return b;
}

StateMoments analytic_moments(const PolarForm& polar, double sigma2) {
  require_positive_sigma2(sigma2, "analytic_moments");
  const ComplexMatrix ch = hermitian_matrix_function(polar.r_part, MatrixFunction::Cosh);
  const ComplexMatrix sh = hermitian_matrix_function(polar.r_part, MatrixFunction::Sinh);
  StateMoments m;
  m.sigma2 = sigma2;
  m.gamma = sigma2 * hermitian_matrix_function(polar.r_part, MatrixFunction::CoshOfDouble);
  m.c = sigma2 * (ch * polar.q_part.transpose() * sh.transpose() + sh * polar.q_part * ch.transpose());
  return m;
}

StateMoments empirical_moments(const SampleBatch& b) {
  if (b.n < 2) throw InvalidArgument("empirical_moments: need at least two realizations");
  const std::size_t d = b.d;
  const MomentSums sums = parallel::accumulate_moments(b.amplitudes, b.n, d);
  const double inv_n = 1.0 / static_cast<double>(b.n);
  StateMoments m{ComplexMatrix(d, d), ComplexMatrix(d, d), b.sigma2};
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m.gamma(i, j) = sums.gamma[i * d + j] * inv_n;
      m.c(i, j) = sums.c[i * d + j] * inv_n;
    }
  }
  // Impose the exact structure rather than trusting rounding.
  for (std::size_t i = 0; i < d; ++i) {
    m.gamma(i, i) = m.gamma(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) {
      m.gamma(j, i) = std::conj(m.gamma(i, j));
      m.c(j, i) = m.c(i, j);
    }
  }
  return m;
}

double impropriety(const StateMoments& m) {
  const cplx det_gamma = determinant(m.gamma);
  if (!(det_gamma.real() > 0.0)) throw NumericalError("impropriety: covariance matrix is singular");
  const double ratio = std::abs(determinant(m.c) / det_gamma);
  const double value = ratio * ratio;
  constexpr double kSlack = 1e-12;
  if (value > 1.0 + kSlack) throw NumericalError("impropriety: value exceeds one; moments are inconsistent");
  return std::clamp(value, 0.0, 1.0);
}

double impropriety_isotropic(double r, std::size_t d) {
  if (!(r >= 0.0)) throw InvalidArgument("impropriety_isotropic: r must be non-negative");
  if (d == 0) throw InvalidArgument("impropriety_isotropic: d must be positive");
  return std::pow(std::tanh(2.0 * r), 2.0 * static_cast<double>(d));
}

double log_density(std::span<const cplx> beta, const StateMoments& m) {
  const std::size_t d = m.gamma.rows();
  if (beta.size() != d) throw InvalidArgument("log_density: beta has the wrong dimension");
  const ComplexMatrix aug = augmented_covariance(m);
  const EigenResult eig = eig_hermitian(aug);
  if (!(eig.values.back() > 0.0)) throw NumericalError("log_density: augmented covariance is singular");
  double log_det = 0.0;
  for (double v : eig.values) log_det += std::log(v);

  std::vector<cplx> u(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    u[i] = beta[i];
    u[i + d] = std::conj(beta[i]);
  }
  const std::vector<cplx> x = solve(aug, u);
  cplx quad = 0.0;
  for (std::size_t i = 0; i < 2 * d; ++i) quad += std::conj(u[i]) * x[i];
  return -0.5 * quad.real() - static_cast<double>(d) * std::log(std::numbers::pi) - 0.5 * log_det;
}

double log_density_isotropic(std::span<const cplx> beta, double r, const ComplexMatrix& q, double sigma2) {
  const std::size_t d = q.rows();
  if (beta.size() != d) throw InvalidArgument("log_density_isotropic: beta has the wrong dimension");
  require_positive_sigma2(sigma2, "log_density_isotropic");
  std::vector<cplx> beta_conj(beta.begin(), beta.end());
  for (auto& z : beta_conj) z = std::conj(z);
  const std::vector<cplx> q_beta = q * std::span<const cplx>(beta_conj);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) norm2 += std::norm(std::cosh(r) * beta[i] - std::sinh(r) * q_beta[i]);
  return -norm2 / sigma2 - static_cast<double>(d) * std::log(std::numbers::pi * sigma2);
}

SeparabilityVerdict separability_threshold(double sigma2, double r) {
  require_positive_sigma2(sigma2, "separability_threshold");
  return {sigma2 * std::exp(-2.0 * r) < 0.5, std::max(0.0, 0.5 * std::log(2.0 * sigma2))};
}

SqueezingSpec two_photon_squeezing(const AlphaAmplitudes& alpha, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("two_photon_squeezing: r must be a finite non-negative number");
  double norm2 = 0.0;
  for (cplx a : alpha) norm2 += std::norm(a);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw InvalidArgument("two_photon_squeezing: alpha must be non-zero");
  const double scale = r / std::sqrt(norm2);
  const cplx a1 = scale * alpha[0];
  const cplx a2 = scale * alpha[1];
  const cplx a3 = scale * alpha[2];
  const cplx a4 = scale * alpha[3];
  return SqueezingSpec(ComplexMatrix{
      {0.0, 0.0, a1, a2},
      {0.0, 0.0, a3, a4},
      {a1, a3, 0.0, 0.0},
      {a2, a4, 0.0, 0.0},
  });
}

SqueezingSpec symmetric_two_mode_squeezing(double r, double phi) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("symmetric_two_mode_squeezing: r must be non-negative");
  const cplx off = std::polar(r, phi);
  return SqueezingSpec(ComplexMatrix{{0.0, off}, {off, 0.0}});
}

AlphaAmplitudes singlet_alpha() {
  const double h = std::numbers::sqrt2 / 2.0;
  return {0.0, h, -h, 0.0};
}

AlphaAmplitudes separable_uniform_alpha() { return {0.5, 0.5, 0.5, 0.5}; }

}  // namespace sqz
