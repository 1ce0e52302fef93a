#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sqz/complex_matrix.hpp"

namespace sqz {

/// n realizations of a d-mode amplitude vector, row-major (row = realization).
struct SampleBatch {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<cplx> amplitudes;
  std::uint64_t seed = 0;
  double sigma2 = 0.0;  // variance scale of the vacuum source

  std::span<const cplx> row(std::size_t i) const { return {amplitudes.data() + i * d, d}; }
  std::span<cplx> row(std::size_t i) { return {amplitudes.data() + i * d, d}; }
};

}  // namespace sqz
