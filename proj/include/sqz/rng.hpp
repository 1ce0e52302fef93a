#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>

namespace sqz::rng {

/// Rows per substream. Row i of any batch is drawn from substream
/// floor(i / kChunkRows), so output does not depend on the worker count.
inline constexpr std::size_t kChunkRows = 4096;

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Derives an independent 64-bit seed for child `index` of `base`:
/// splitmix64(base + 0x9E3779B97F4A7C15 * (index + 1)).
constexpr std::uint64_t mix(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base + 0x9E3779B97F4A7C15ull * (index + 1));
}

/// One substream: std::mt19937_64 seeded with mix(seed, chunk). The engine
/// algorithm is fixed by the C++ standard; the uniform and normal transforms
/// below are written out so no library-defined distribution is involved.
class ChunkStream {
 public:
  ChunkStream(std::uint64_t seed, std::uint64_t chunk) : engine_(mix(seed, chunk)) {}

  /// Uniform on (0, 1], 53 random bits.
  double uniform_open_low() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  /// Uniform on [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard complex Gaussian: E|z|^2 = 1, E z^2 = 0 (Box-Muller; |z|^2 is
  /// Exp(1) and the phase is uniform).
  std::complex<double> standard_complex_normal() {
    const double radius = std::sqrt(-std::log(uniform_open_low()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sqz::rng
