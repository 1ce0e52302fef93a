#include <algorithm>
#include <cmath>

#include "sqz/error.hpp"
#include "sqz/kernels.hpp"
#include "sqz/rng.hpp"

namespace sqz::serial {

void fill_vacuum(std::span<cplx> out, std::size_t n, std::size_t d, double sigma, std::uint64_t seed) {
  if (out.size() != n * d) throw InvalidArgument("fill_vacuum: output span has the wrong size");
  std::size_t row = 0;
  for (std::uint64_t chunk = 0; row < n; ++chunk) {
    rng::ChunkStream stream(seed, chunk);
    const std::size_t end = std::min(n, row + rng::kChunkRows);
    for (; row < end; ++row)
      for (std::size_t j = 0; j < d; ++j) out[row * d + j] = sigma * stream.standard_complex_normal();
  }
}

void apply_bogoliubov(std::span<const cplx> in, std::span<cplx> out, std::size_t n, const BogoliubovOperator& op) {
  if (in.size() != n * op.d || out.size() != n * op.d) throw InvalidArgument("apply_bogoliubov: size mismatch");
  for (std::size_t i = 0; i < n; ++i) detail::transform_row(op, in.data() + i * op.d, out.data() + i * op.d);
}

MomentSums accumulate_moments(std::span<const cplx> b, std::size_t n, std::size_t d) {
  MomentSums s{std::vector<cplx>(d * d), std::vector<cplx>(d * d)};
  for (std::size_t r = 0; r < n; ++r) {
    const cplx* x = b.data() + r * d;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        s.gamma[i * d + j] += x[i] * std::conj(x[j]);
        s.c[i * d + j] += x[i] * x[j];
      }
  }
  return s;
}

EventCounts tally_pair(std::span<const cplx> b, std::size_t n, const Rotation2& ua, const Rotation2& ub, double gamma) {
  if (b.size() != n * 4) throw InvalidArgument("tally_pair: expected four modes per row");
  EventCounts c;
  for (std::size_t r = 0; r < n; ++r) {
    const cplx* x = b.data() + r * 4;
    detail::tally_row(c, detail::detect_rotated(ua, x[0], x[1], gamma), detail::detect_rotated(ub, x[2], x[3], gamma));
  }
  return c;
}

PairCounts tally_all(std::span<const cplx> b, std::size_t n, const DetectorBank& bank) {
  PairCounts out{};
  for (std::size_t p = 0; p < 4; ++p) {
    out[p] = tally_pair(b, n, bank.alice[p / 2], bank.bob[p % 2], bank.gamma);
  }
  return out;
}

PairCounts stream_chsh(std::size_t n, double sigma, std::uint64_t seed, const BogoliubovOperator& op,
                       const DetectorBank& bank) {
  if (op.d != 4) throw InvalidArgument("stream_chsh: the CHSH scheme needs four modes");
  std::vector<cplx> a(n * 4);
  std::vector<cplx> b(n * 4);
  fill_vacuum(a, n, 4, sigma, seed);
  apply_bogoliubov(a, b, n, op);
  return tally_all(b, n, bank);
}

}  // namespace sqz::serial
