// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.
//
//   ./bench_kernels --benchmark_filter=Tally

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sqz/gaussian_model.hpp"
#include "sqz/kernels.hpp"

namespace {

using sqz::cplx;

constexpr std::size_t kModes = 4;
const double kSigma = std::sqrt(0.5);

const sqz::BogoliubovOperator& singlet_op() {
  static const auto op = sqz::BogoliubovOperator::from_polar(
      sqz::polar_decompose(sqz::two_photon_squeezing(sqz::singlet_alpha(), 1.0).xi()));
  return op;
}

template <auto Fill>
void BM_FillVacuum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<cplx> out(n * kModes);
  for (auto _ : state) {
    Fill(out, n, kModes, kSigma, 1);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <auto Apply>
void BM_ApplyBogoliubov(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<cplx> in(n * kModes), out(n * kModes);
  sqz::serial::fill_vacuum(in, n, kModes, kSigma, 1);
  for (auto _ : state) {
    Apply(in, out, n, singlet_op());
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <auto Tally>
void BM_TallyAll(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<cplx> a(n * kModes), b(n * kModes);
  sqz::serial::fill_vacuum(a, n, kModes, kSigma, 1);
  sqz::serial::apply_bogoliubov(a, b, n, singlet_op());
  const auto bank = sqz::DetectorBank::chsh(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(Tally(b, n, bank));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <auto Stream>
void BM_StreamChsh(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto bank = sqz::DetectorBank::chsh(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(Stream(n, kSigma, 7, singlet_op(), bank));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

constexpr std::int64_t kSmall = 1 << 14;
constexpr std::int64_t kLarge = 1 << 20;

BENCHMARK(BM_FillVacuum<sqz::serial::fill_vacuum>)->Name("FillVacuum/serial")->Range(kSmall, kLarge)->UseRealTime();
BENCHMARK(BM_FillVacuum<sqz::parallel::fill_vacuum>)->Name("FillVacuum/omp")->Range(kSmall, kLarge)->UseRealTime();
BENCHMARK(BM_ApplyBogoliubov<sqz::serial::apply_bogoliubov>)
    ->Name("ApplyBogoliubov/serial")->Range(kSmall, kLarge)->UseRealTime();
BENCHMARK(BM_ApplyBogoliubov<sqz::parallel::apply_bogoliubov>)
    ->Name("ApplyBogoliubov/omp")->Range(kSmall, kLarge)->UseRealTime();
BENCHMARK(BM_TallyAll<sqz::serial::tally_all>)->Name("TallyAll/serial")->Range(kSmall, kLarge)->UseRealTime();
BENCHMARK(BM_TallyAll<sqz::parallel::tally_all>)->Name("TallyAll/omp")->Range(kSmall, kLarge)->UseRealTime();
BENCHMARK(BM_StreamChsh<sqz::serial::stream_chsh>)->Name("StreamChsh/serial")->Arg(kLarge)->UseRealTime();
BENCHMARK(BM_StreamChsh<sqz::parallel::stream_chsh>)->Name("StreamChsh/omp")->Arg(kLarge)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
