#include <omp.h>

#include <algorithm>
#include <cmath>

#include "sqz/error.hpp"
#include "sqz/kernels.hpp"
#include "sqz/rng.hpp"

namespace sqz {

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

namespace parallel {
namespace {

std::int64_t chunk_count(std::size_t n) {
  return static_cast<std::int64_t>((n + rng::kChunkRows - 1) / rng::kChunkRows);
}

void fill_chunk(cplx* out, std::size_t first, std::size_t last, std::size_t d, double sigma, std::uint64_t seed,
                std::uint64_t chunk) {
  rng::ChunkStream stream(seed, chunk);
  for (std::size_t row = first; row < last; ++row)
    for (std::size_t j = 0; j < d; ++j) out[(row - first) * d + j] = sigma * stream.standard_complex_normal();
}

}  // namespace

void fill_vacuum(std::span<cplx> out, std::size_t n, std::size_t d, double sigma, std::uint64_t seed) {
  if (out.size() != n * d) throw InvalidArgument("fill_vacuum: output span has the wrong size");
  const std::int64_t chunks = chunk_count(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::size_t first = static_cast<std::size_t>(c) * rng::kChunkRows;
    const std::size_t last = std::min(n, first + rng::kChunkRows);
    fill_chunk(out.data() + first * d, first, last, d, sigma, seed, static_cast<std::uint64_t>(c));
  }
}

void apply_bogoliubov(std::span<const cplx> in, std::span<cplx> out, std::size_t n, const BogoliubovOperator& op) {
  if (in.size() != n * op.d || out.size() != n * op.d) throw InvalidArgument("apply_bogoliubov: size mismatch");
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i) {
    detail::transform_row(op, in.data() + i * op.d, out.data() + i * op.d);
  }
}

MomentSums accumulate_moments(std::span<const cplx> b, std::size_t n, std::size_t d) {
  // Per-chunk partial sums reduced in chunk order: the result does not
  // depend on how chunks were scheduled.
  const std::int64_t chunks = chunk_count(n);
  std::vector<MomentSums> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < chunks; ++c) {
    MomentSums s{std::vector<cplx>(d * d), std::vector<cplx>(d * d)};
    const std::size_t first = static_cast<std::size_t>(c) * rng::kChunkRows;
    const std::size_t last = std::min(n, first + rng::kChunkRows);
    for (std::size_t r = first; r < last; ++r) {
      const cplx* x = b.data() + r * d;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          s.gamma[i * d + j] += x[i] * std::conj(x[j]);
          s.c[i * d + j] += x[i] * x[j];
        }
    }
    partial[static_cast<std::size_t>(c)] = std::move(s);
  }
  MomentSums total{std::vector<cplx>(d * d), std::vector<cplx>(d * d)};
  for (const auto& s : partial) {
    for (std::size_t k = 0; k < d * d; ++k) {
      total.gamma[k] += s.gamma[k];
      total.c[k] += s.c[k];
    }
  }
  return total;
}

EventCounts tally_pair(std::span<const cplx> b, std::size_t n, const Rotation2& ua, const Rotation2& ub, double gamma) {
  if (b.size() != n * 4) throw InvalidArgument("tally_pair: expected four modes per row");
  const auto rows = static_cast<std::int64_t>(n);
  EventCounts total;
#pragma omp parallel
  {
    EventCounts local;
#pragma omp for schedule(static) nowait
    for (std::int64_t r = 0; r < rows; ++r) {
      const cplx* x = b.data() + r * 4;
      detail::tally_row(local, detail::detect_rotated(ua, x[0], x[1], gamma),
                        detail::detect_rotated(ub, x[2], x[3], gamma));
    }
#pragma omp critical(sqz_tally_reduce)
    total += local;
  }
  return total;
}

PairCounts tally_all(std::span<const cplx> b, std::size_t n, const DetectorBank& bank) {
  if (b.size() != n * 4) throw InvalidArgument("tally_all: expected four modes per row");
  const auto rows = static_cast<std::int64_t>(n);
  PairCounts total{};
#pragma omp parallel
  {
    PairCounts local{};
#pragma omp for schedule(static) nowait
    for (std::int64_t r = 0; r < rows; ++r) {
      const cplx* x = b.data() + r * 4;
      const std::array<detail::RowOutcome, 2> oa{detail::detect_rotated(bank.alice[0], x[0], x[1], bank.gamma),
                                                 detail::detect_rotated(bank.alice[1], x[0], x[1], bank.gamma)};
      const std::array<detail::RowOutcome, 2> ob{detail::detect_rotated(bank.bob[0], x[2], x[3], bank.gamma),
                                                 detail::detect_rotated(bank.bob[1], x[2], x[3], bank.gamma)};
      for (std::size_t p = 0; p < 4; ++p) detail::tally_row(local[p], oa[p / 2], ob[p % 2]);
    }
#pragma omp critical(sqz_tally_reduce)
    for (std::size_t p = 0; p < 4; ++p) total[p] += local[p];
  }
  return total;
}

PairCounts stream_chsh(std::size_t n, double sigma, std::uint64_t seed, const BogoliubovOperator& op,
                       const DetectorBank& bank) {
  if (op.d != 4) throw InvalidArgument("stream_chsh: the CHSH scheme needs four modes");
  const std::int64_t chunks = chunk_count(n);
  PairCounts total{};
#pragma omp parallel
  {
    std::vector<cplx> a(rng::kChunkRows * 4);
    std::vector<cplx> b(rng::kChunkRows * 4);
    PairCounts local{};
#pragma omp for schedule(static) nowait
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::size_t first = static_cast<std::size_t>(c) * rng::kChunkRows;
      const std::size_t last = std::min(n, first + rng::kChunkRows);
      const std::size_t rows = last - first;
      fill_chunk(a.data(), first, last, 4, sigma, seed, static_cast<std::uint64_t>(c));
      for (std::size_t i = 0; i < rows; ++i) detail::transform_row(op, a.data() + i * 4, b.data() + i * 4);
      for (std::size_t i = 0; i < rows; ++i) {
        const cplx* x = b.data() + i * 4;
        const std::array<detail::RowOutcome, 2> oa{detail::detect_rotated(bank.alice[0], x[0], x[1], bank.gamma),
                                                   detail::detect_rotated(bank.alice[1], x[0], x[1], bank.gamma)};
        const std::array<detail::RowOutcome, 2> ob{detail::detect_rotated(bank.bob[0], x[2], x[3], bank.gamma),
                                                   detail::detect_rotated(bank.bob[1], x[2], x[3], bank.gamma)};
        for (std::size_t p = 0; p < 4; ++p) detail::tally_row(local[p], oa[p / 2], ob[p % 2]);
      }
    }
#pragma omp critical(sqz_tally_reduce)
    for (std::size_t p = 0; p < 4; ++p) total[p] += local[p];
  }
  return total;
}

}  // namespace parallel
}  // namespace sqz
