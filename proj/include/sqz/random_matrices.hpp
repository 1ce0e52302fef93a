#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "sqz/complex_matrix.hpp"

namespace sqz {

/// Seeded generator of random test matrices (Ginibre-based).
class MatrixSampler {
 public:
  explicit MatrixSampler(std::uint64_t seed) : engine_(seed) {}

  /// Standard complex Gaussian entry, E|z|^2 = 1.
  cplx gaussian();
  double uniform(double lo, double hi);

  ComplexMatrix ginibre(std::size_t d);
  /// Haar unitary (Gram-Schmidt on a Ginibre matrix).
  ComplexMatrix unitary(std::size_t d);
  /// W W^T for Haar W: symmetric and unitary.
  ComplexMatrix symmetric_unitary(std::size_t d);
  ComplexMatrix hermitian(std::size_t d);
  /// V diag(lambda) V^H with lambda uniform in [0, max_eigenvalue].
  ComplexMatrix hermitian_psd(std::size_t d, double max_eigenvalue);
  /// Complex symmetric with spectral norm uniform in (0, max_norm].
  ComplexMatrix symmetric(std::size_t d, double max_norm);

 private:
  std::mt19937_64 engine_;
};

}  // namespace sqz
