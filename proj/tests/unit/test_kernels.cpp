#include <gtest/gtest.h>

#include <numbers>

#include "sqz/gaussian_model.hpp"
#include "sqz/kernels.hpp"
#include "sqz/random_matrices.hpp"

namespace sqz {
namespace {

// Restores the worker count after each test.
class KernelsTest : public ::testing::Test {
 protected:
  void SetUp() override { saved_ = thread_count(); }
  void TearDown() override { set_thread_count(saved_); }
  int saved_ = 1;
};

constexpr std::size_t kRows = 3 * 4096 + 123;  // several chunks plus a ragged tail

BogoliubovOperator singlet_operator(double r) {
  return BogoliubovOperator::from_polar(polar_decompose(two_photon_squeezing(singlet_alpha(), r).xi()));
}

TEST_F(KernelsTest, FillVacuumSerialEqualsParallel) {
  std::vector<cplx> ref(kRows * 4), par(kRows * 4);
  serial::fill_vacuum(ref, kRows, 4, 0.7, 77);
  for (int t : {1, 2, 4}) {
    set_thread_count(t);
    parallel::fill_vacuum(par, kRows, 4, 0.7, 77);
    EXPECT_EQ(ref, par) << "threads=" << t;
  }
}

TEST_F(KernelsTest, ApplyBogoliubovSerialEqualsParallel) {
  MatrixSampler gen(31);
  std::vector<cplx> in(kRows * 4), ref(kRows * 4), par(kRows * 4);
  serial::fill_vacuum(in, kRows, 4, 0.5, 1);
  const auto op = BogoliubovOperator::from_polar(polar_decompose(gen.symmetric(4, 2.0)));
  serial::apply_bogoliubov(in, ref, kRows, op);
  for (int t : {1, 4}) {
    set_thread_count(t);
    parallel::apply_bogoliubov(in, par, kRows, op);
    EXPECT_EQ(ref, par);
  }
}

TEST_F(KernelsTest, MomentSumsAgreeAcrossThreadCounts) {
  std::vector<cplx> b(kRows * 3);
  serial::fill_vacuum(b, kRows, 3, 1.0, 5);
  set_thread_count(1);
  const MomentSums one = parallel::accumulate_moments(b, kRows, 3);
  set_thread_count(4);
  const MomentSums four = parallel::accumulate_moments(b, kRows, 3);
  // Fixed chunk order makes the parallel reduction exact.
  EXPECT_EQ(one.gamma, four.gamma);
  EXPECT_EQ(one.c, four.c);
  // The serial reference sums in a different order.
  const MomentSums ref = serial::accumulate_moments(b, kRows, 3);
  for (std::size_t k = 0; k < 9; ++k) {
    EXPECT_NEAR(std::abs(ref.gamma[k] - one.gamma[k]), 0.0, 1e-9 * kRows);
    EXPECT_NEAR(std::abs(ref.c[k] - one.c[k]), 0.0, 1e-9 * kRows);
  }
}

TEST_F(KernelsTest, TalliesSerialEqualsParallel) {
  std::vector<cplx> a(kRows * 4), b(kRows * 4);
  serial::fill_vacuum(a, kRows, 4, std::sqrt(0.5), 9);
  serial::apply_bogoliubov(a, b, kRows, singlet_operator(1.0));
  const auto bank = DetectorBank::chsh(1.0);
  const PairCounts ref = serial::tally_all(b, kRows, bank);
  for (int t : {1, 3, 4}) {
    set_thread_count(t);
    EXPECT_EQ(ref, parallel::tally_all(b, kRows, bank));
    EXPECT_EQ(ref[0], parallel::tally_pair(b, kRows, bank.alice[0], bank.bob[0], bank.gamma));
  }
  EXPECT_EQ(ref[3], serial::tally_pair(b, kRows, bank.alice[1], bank.bob[1], bank.gamma));
  for (const auto& c : ref) EXPECT_EQ(c.n_total, kRows);
}

TEST_F(KernelsTest, FusedStreamMatchesMaterialized) {
  const auto op = singlet_operator(0.9);
  const auto bank = DetectorBank::chsh(1.0);
  const double sigma = std::sqrt(0.5);
  const PairCounts ref = serial::stream_chsh(kRows, sigma, 2024, op, bank);
  std::vector<cplx> a(kRows * 4), b(kRows * 4);
  serial::fill_vacuum(a, kRows, 4, sigma, 2024);
  serial::apply_bogoliubov(a, b, kRows, op);
  EXPECT_EQ(ref, serial::tally_all(b, kRows, bank));
  for (int t : {1, 4}) {
    set_thread_count(t);
    EXPECT_EQ(ref, parallel::stream_chsh(kRows, sigma, 2024, op, bank));
  }
}

TEST_F(KernelsTest, EmptyInput) {
  const auto bank = DetectorBank::chsh(1.0);
  const PairCounts none = parallel::tally_all({}, 0, bank);
  for (const auto& c : none) EXPECT_EQ(c, EventCounts{});
  const MomentSums m = parallel::accumulate_moments({}, 0, 2);
  for (const auto& z : m.gamma) EXPECT_EQ(z, cplx(0.0));
}

TEST(Kernels, ThreadCountClamp) {
  const int saved = thread_count();
  set_thread_count(0);
  EXPECT_GE(thread_count(), 1);
  set_thread_count(3);
  EXPECT_EQ(thread_count(), 3);
  set_thread_count(saved);
}

TEST(Kernels, DetectRotatedIsStrict) {
  const Rotation2 id{1.0, 0.0, 0.0, 1.0};
  const auto at = detail::detect_rotated(id, 1.0, cplx(0.0, 1.0), 1.0);
  EXPECT_FALSE(at.h);
  EXPECT_FALSE(at.v);
  const auto above = detail::detect_rotated(id, 1.0000001, cplx(0.0, -1.0000001), 1.0);
  EXPECT_TRUE(above.h);
  EXPECT_TRUE(above.v);
}

}  // namespace
}  // namespace sqz
