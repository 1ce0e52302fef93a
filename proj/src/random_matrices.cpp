#include "sqz/random_matrices.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "sqz/linalg.hpp"

namespace sqz {

double MatrixSampler::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

cplx MatrixSampler::gaussian() {
  const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return std::polar(std::sqrt(-std::log(u1)), 2.0 * std::numbers::pi * u2);
}

ComplexMatrix MatrixSampler::ginibre(std::size_t d) {
  ComplexMatrix g(d, d);
  for (auto& z : g.entries()) z = gaussian();
  return g;
}

ComplexMatrix MatrixSampler::unitary(std::size_t d) {
  ComplexMatrix q = ginibre(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < d; ++i) proj += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < d; ++i) q(i, j) -= proj * q(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < d; ++i) q(i, j) /= norm;
  }
  return q;
}

ComplexMatrix MatrixSampler::symmetric_unitary(std::size_t d) {
  const ComplexMatrix w = unitary(d);
  return w * w.transpose();
}

ComplexMatrix MatrixSampler::hermitian(std::size_t d) {
  const ComplexMatrix g = ginibre(d);
  ComplexMatrix h = g + g.adjoint();
  h *= 0.5;
  return h;
}

ComplexMatrix MatrixSampler::hermitian_psd(std::size_t d, double max_eigenvalue) {
  const ComplexMatrix v = unitary(d);
  std::vector<double> lambda(d);
  for (auto& x : lambda) x = uniform(0.0, max_eigenvalue);
  ComplexMatrix m = v * ComplexMatrix::diagonal(std::span<const double>(lambda)) * v.adjoint();
  return 0.5 * (m + m.adjoint());
}

ComplexMatrix MatrixSampler::symmetric(std::size_t d, double max_norm) {
  const ComplexMatrix g = ginibre(d);
  ComplexMatrix s = g + g.transpose();
  const double spectral = svd(s).d.front();
  const double target = max_norm * (1.0 - uniform(0.0, 1.0));  // (0, max_norm]
  s *= target / spectral;
  return s;
}

}  // namespace sqz
