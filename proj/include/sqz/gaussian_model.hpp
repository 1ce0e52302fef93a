#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "sqz/complex_matrix.hpp"
#include "sqz/linalg.hpp"
#include "sqz/sample_batch.hpp"

namespace sqz {

/// Mode order of the two-photon polarization model.
enum Mode : std::size_t { kAH = 0, kAV = 1, kBH = 2, kBV = 3 };

/// Complex symmetric squeezing matrix.
class SqueezingSpec {
 public:
  /// Validates squareness and symmetry (1e-10 relative).
  explicit SqueezingSpec(ComplexMatrix xi);

  const ComplexMatrix& xi() const { return xi_; }
  std::size_t dim() const { return xi_.rows(); }

 private:
  ComplexMatrix xi_;
};

/// Covariance E[b b^H], pseudo-covariance E[b b^T] and the source variance.
struct StateMoments {
  ComplexMatrix gamma;
  ComplexMatrix c;
  double sigma2 = 0.5;
};

struct SeparabilityVerdict {
  bool entangled = false;
  double threshold_r = 0.0;
};

using AlphaAmplitudes = std::array<cplx, 4>;

/// Vacuum/thermal source: each entry sigma * z with z standard complex
/// Gaussian. Bit-identical for fixed (d, n, sigma2, seed) at any thread count.
SampleBatch sample_vacuum(std::size_t d, std::size_t n, double sigma2, std::uint64_t seed);

/// Row-wise b = cosh(R) a + sinh(R) Q conj(a).
SampleBatch bogoliubov_transform(const SampleBatch& a, const PolarForm& polar);

/// Gamma = sigma2 cosh(2R), C = sigma2 [cosh(R) Q^T sinh(R)^T + sinh(R) Q cosh(R)^T].
StateMoments analytic_moments(const PolarForm& polar, double sigma2);

/// Sample estimates (1/n) sum b b^H and (1/n) sum b b^T. Gamma is exactly
/// Hermitian and C exactly symmetric.
StateMoments empirical_moments(const SampleBatch& b);

/// |det C|^2 / (det Gamma)^2, in [0, 1].
double impropriety(const StateMoments& m);

/// tanh(2r)^(2d): impropriety when R = r I.
double impropriety_isotropic(double r, std::size_t d);

/// Log of the improper complex Gaussian density through the augmented
/// covariance [[Gamma, C], [C*, Gamma*]] (normalization pi^-d det^-1/2).
double log_density(std::span<const cplx> beta, const StateMoments& m);

/// Closed form of the density for R = r I:
/// -||cosh(r) beta - sinh(r) Q conj(beta)||^2 / sigma2 - d log(pi sigma2).
double log_density_isotropic(std::span<const cplx> beta, double r, const ComplexMatrix& q, double sigma2);

/// Two-mode criterion for xi = r e^{i phi} [[0,1],[1,0]]: entangled iff
/// sigma2 exp(-2r) < 1/2. threshold_r = max(0, log(2 sigma2) / 2).
SeparabilityVerdict separability_threshold(double sigma2, double r);

/// 4x4 two-photon squeezing matrix over (AH, AV, BH, BV). alpha is
/// renormalized to unit norm; a zero vector is rejected.
SqueezingSpec two_photon_squeezing(const AlphaAmplitudes& alpha, double r);

/// r e^{i phi} [[0,1],[1,0]].
SqueezingSpec symmetric_two_mode_squeezing(double r, double phi);

AlphaAmplitudes singlet_alpha();
AlphaAmplitudes separable_uniform_alpha();

}  // namespace sqz
