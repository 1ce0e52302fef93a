#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sqz/complex_matrix.hpp"
#include "sqz/detection.hpp"
#include "sqz/linalg.hpp"

// Row-parallel inner loops. `parallel::` is the OpenMP build used by the
// library; `serial::` is the straight-line reference the tests and the
// benchmark compare against. Both produce bit-identical samples and tallies.

namespace sqz {

/// cosh(R) and sinh(R) Q as dense row-major d x d arrays.
struct BogoliubovOperator {
  std::size_t d = 0;
  std::vector<cplx> direct;
  std::vector<cplx> conjugate;

  static BogoliubovOperator from_polar(const PolarForm& polar);
};

using Rotation2 = std::array<cplx, 4>;  // row-major 2x2

/// U^H for the two settings of each side, plus the click threshold.
struct DetectorBank {
  std::array<Rotation2, 2> alice;
  std::array<Rotation2, 2> bob;
  double gamma = 1.0;

  static DetectorBank chsh(double gamma);
};

Rotation2 rotation_adjoint(const MeasurementSetting& setting);

struct MomentSums {
  std::vector<cplx> gamma;  // sum b b^H
  std::vector<cplx> c;      // sum b b^T
};

void set_thread_count(int threads);
int thread_count();

namespace serial {

void fill_vacuum(std::span<cplx> out, std::size_t n, std::size_t d, double sigma, std::uint64_t seed);
void apply_bogoliubov(std::span<const cplx> in, std::span<cplx> out, std::size_t n, const BogoliubovOperator& op);
MomentSums accumulate_moments(std::span<const cplx> b, std::size_t n, std::size_t d);
EventCounts tally_pair(std::span<const cplx> b, std::size_t n, const Rotation2& ua, const Rotation2& ub, double gamma);
PairCounts tally_all(std::span<const cplx> b, std::size_t n, const DetectorBank& bank);
PairCounts stream_chsh(std::size_t n, double sigma, std::uint64_t seed, const BogoliubovOperator& op,
                       const DetectorBank& bank);

}  // namespace serial

namespace parallel {

void fill_vacuum(std::span<cplx> out, std::size_t n, std::size_t d, double sigma, std::uint64_t seed);
void apply_bogoliubov(std::span<const cplx> in, std::span<cplx> out, std::size_t n, const BogoliubovOperator& op);
MomentSums accumulate_moments(std::span<const cplx> b, std::size_t n, std::size_t d);
EventCounts tally_pair(std::span<const cplx> b, std::size_t n, const Rotation2& ua, const Rotation2& ub, double gamma);
PairCounts tally_all(std::span<const cplx> b, std::size_t n, const DetectorBank& bank);
/// Fused sample -> transform -> tally per chunk; never materializes the batch.
PairCounts stream_chsh(std::size_t n, double sigma, std::uint64_t seed, const BogoliubovOperator& op,
                       const DetectorBank& bank);

}  // namespace parallel

namespace detail {

/// Per-row detector logic shared by both kernel builds.
struct RowOutcome {
  bool h = false;
  bool v = false;
};

inline RowOutcome detect_rotated(const Rotation2& uh, cplx h, cplx v, double gamma) {
  const cplx hp = uh[0] * h + uh[1] * v;
  const cplx vp = uh[2] * h + uh[3] * v;
  const double g2 = gamma * gamma;
  return {std::norm(hp) > g2, std::norm(vp) > g2};
}

inline void tally_row(EventCounts& c, RowOutcome a, RowOutcome b) {
  const bool single_a = a.h != a.v;
  const bool single_b = b.h != b.v;
  const bool any_a = a.h || a.v;
  const bool any_b = b.h || b.v;
  ++c.n_total;
  c.n_single_a += single_a;
  c.n_single_b += single_b;
  c.n_detect_a += any_a;
  c.n_detect_b += any_b;
  c.n_detect_either += (any_a || any_b);
  if (single_a && single_b) {
    if (a.h) {
      b.h ? ++c.n_hh : ++c.n_hv;
    } else {
      b.h ? ++c.n_vh : ++c.n_vv;
    }
  }
}

inline void transform_row(const BogoliubovOperator& op, const cplx* in, cplx* out) {
  const std::size_t d = op.d;
  for (std::size_t i = 0; i < d; ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) acc += op.direct[i * d + j] * in[j] + op.conjugate[i * d + j] * std::conj(in[j]);
    out[i] = acc;
  }
}

}  // namespace detail

}  // namespace sqz
