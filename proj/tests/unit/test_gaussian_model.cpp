#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sqz/error.hpp"
#include "sqz/gaussian_model.hpp"
#include "sqz/random_matrices.hpp"

namespace sqz {
namespace {

constexpr std::size_t kBig = std::size_t{1} << 20;

// 5 standard errors of a complex second-moment estimate.
double moment_tol(const StateMoments& m, std::size_t i, std::size_t j, std::size_t n) {
  return 5.0 / std::sqrt(static_cast<double>(n)) * std::sqrt(2.0 * m.gamma(i, i).real() * m.gamma(j, j).real());
}

TEST(SampleVacuum, ShapeAndDeterminism) {
  const auto a = sample_vacuum(3, 5000, 0.5, 42);
  EXPECT_EQ(a.n, 5000u);
  EXPECT_EQ(a.d, 3u);
  EXPECT_EQ(a.amplitudes.size(), 15000u);
  EXPECT_EQ(a.seed, 42u);
  EXPECT_EQ(a.amplitudes, sample_vacuum(3, 5000, 0.5, 42).amplitudes);
  EXPECT_NE(a.amplitudes, sample_vacuum(3, 5000, 0.5, 43).amplitudes);
}

TEST(SampleVacuum, PrefixStable) {
  // Row i depends only on its chunk, so a shorter batch is a prefix.
  const auto big = sample_vacuum(2, 10000, 1.0, 5);
  const auto small = sample_vacuum(2, 5000, 1.0, 5);
  for (std::size_t k = 0; k < small.amplitudes.size(); ++k) EXPECT_EQ(small.amplitudes[k], big.amplitudes[k]);
}

TEST(SampleVacuum, MomentsAreProper) {
  for (double sigma2 : {0.5, 2.0}) {
    const auto a = sample_vacuum(4, kBig, sigma2, 99);
    const auto m = empirical_moments(a);
    const double tol = 5.0 / std::sqrt(static_cast<double>(kBig)) * std::sqrt(2.0) * sigma2;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_NEAR(std::abs(m.gamma(i, j) - (i == j ? sigma2 : 0.0)), 0.0, tol);
        EXPECT_NEAR(std::abs(m.c(i, j)), 0.0, tol);
      }
  }
}

TEST(SampleVacuum, RejectsBadArguments) {
  EXPECT_THROW(sample_vacuum(0, 10, 0.5, 1), InvalidArgument);
  EXPECT_THROW(sample_vacuum(2, 10, 0.0, 1), InvalidArgument);
  EXPECT_THROW(sample_vacuum(2, 10, -1.0, 1), InvalidArgument);
  EXPECT_THROW(sample_vacuum(2, 10, std::nan(""), 1), InvalidArgument);
}

TEST(Bogoliubov, ZeroSqueezingIsIdentity) {
  const auto a = sample_vacuum(3, 1000, 0.5, 3);
  const auto b = bogoliubov_transform(a, polar_decompose(ComplexMatrix::zeros(3, 3)));
  EXPECT_EQ(b.amplitudes, a.amplitudes);
}

TEST(Bogoliubov, SingletPairsModesAcrossSides) {
  const double r = 1.2;
  const double rp = r / std::numbers::sqrt2;
  const auto a = sample_vacuum(4, 200, 0.5, 8);
  const auto b = bogoliubov_transform(a, polar_decompose(two_photon_squeezing(singlet_alpha(), r).xi()));
  const double ch = std::cosh(rp), sh = std::sinh(rp);
  for (std::size_t i = 0; i < a.n; ++i) {
    const auto x = a.row(i);
    const auto y = b.row(i);
    // Right-hand sides use the input amplitudes a.
    EXPECT_NEAR(std::abs(y[kAH] - (ch * x[kAH] + sh * std::conj(x[kBV]))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(y[kAV] - (ch * x[kAV] - sh * std::conj(x[kBH]))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(y[kBH] - (ch * x[kBH] - sh * std::conj(x[kAV]))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(y[kBV] - (ch * x[kBV] + sh * std::conj(x[kAH]))), 0.0, 1e-12);
  }
}

TEST(Bogoliubov, DimensionMismatch) {
  const auto a = sample_vacuum(3, 10, 0.5, 3);
  EXPECT_THROW(bogoliubov_transform(a, polar_decompose(ComplexMatrix::zeros(2, 2))), InvalidArgument);
}

TEST(AnalyticMoments, IsotropicClosedForm) {
  MatrixSampler gen(21);
  const double r = 0.6, sigma2 = 0.8;
  const ComplexMatrix q = gen.symmetric_unitary(3);
  const auto m = analytic_moments(polar_decompose(r * q), sigma2);
  EXPECT_LE(max_abs_diff(m.gamma, sigma2 * std::cosh(2 * r) * ComplexMatrix::identity(3)), 1e-12);
  EXPECT_LE(max_abs_diff(m.c, sigma2 * std::sinh(2 * r) * q), 1e-12);
  EXPECT_EQ(m.sigma2, sigma2);
}

TEST(AnalyticMoments, StructureOnRandomXi) {
  MatrixSampler gen(22);
  for (int k = 0; k < 20; ++k) {
    const std::size_t d = 1 + static_cast<std::size_t>(k % 5);
    const auto m = analytic_moments(polar_decompose(gen.symmetric(d, 2.0)), 0.5);
    EXPECT_TRUE(is_hermitian(m.gamma, 1e-10));
    EXPECT_TRUE(is_symmetric(m.c, 1e-10));
    // Gamma >= sigma2 I
    EXPECT_GE(eig_hermitian(m.gamma).values.back(), 0.5 - 1e-9);
    const double im = impropriety(m);
    EXPECT_GE(im, 0.0);
    EXPECT_LE(im, 1.0);
  }
}

TEST(EmpiricalMoments, MatchAnalyticOnRandomXi) {
  MatrixSampler gen(23);
  const auto a = sample_vacuum(4, kBig, 0.5, 1234);
  for (int k = 0; k < 3; ++k) {
    const auto polar = polar_decompose(gen.symmetric(4, 1.5));
    const auto expect = analytic_moments(polar, 0.5);
    const auto got = empirical_moments(bogoliubov_transform(a, polar));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_LE(std::abs(got.gamma(i, j) - expect.gamma(i, j)), moment_tol(expect, i, j, kBig));
        EXPECT_LE(std::abs(got.c(i, j) - expect.c(i, j)), moment_tol(expect, i, j, kBig));
      }
  }
}

TEST(EmpiricalMoments, ExactStructureAndSmallBatch) {
  SampleBatch b;
  b.n = 2;
  b.d = 2;
  b.sigma2 = 1.0;
  b.amplitudes = {cplx(1, 1), cplx(0, 2), cplx(3, 0), cplx(1, -1)};
  const auto m = empirical_moments(b);
  // (1/2) sum b b^H and (1/2) sum b b^T by hand.
  EXPECT_NEAR(std::abs(m.gamma(0, 0) - cplx(5.5, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.gamma(0, 1) - 0.5 * (cplx(1, 1) * cplx(0, -2) + cplx(3, 0) * cplx(1, 1))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.c(0, 1) - 0.5 * (cplx(1, 1) * cplx(0, 2) + cplx(3, 0) * cplx(1, -1))), 0.0, 1e-15);
  EXPECT_EQ(m.gamma(1, 0), std::conj(m.gamma(0, 1)));
  EXPECT_EQ(m.c(1, 0), m.c(0, 1));
  SampleBatch empty;
  empty.d = 2;
  EXPECT_THROW(empirical_moments(empty), InvalidArgument);
}

TEST(Impropriety, Cases) {
  EXPECT_EQ(impropriety(analytic_moments(polar_decompose(ComplexMatrix::zeros(4, 4)), 0.5)), 0.0);
  MatrixSampler gen(24);
  for (std::size_t d : {1u, 2u, 4u})
    for (double r : {0.1, 0.5, 1.0, 2.0}) {
      const auto m = analytic_moments(polar_decompose(r * gen.symmetric_unitary(d)), 0.5);
      const double want = std::pow(std::tanh(2 * r), 2.0 * static_cast<double>(d));
      EXPECT_NEAR(impropriety(m), want, 1e-10);
      EXPECT_NEAR(impropriety_isotropic(r, d), want, 1e-15);
    }
  // Singlet with R = (r/sqrt2) I.
  const double r = 1.0;
  const auto m = analytic_moments(polar_decompose(two_photon_squeezing(singlet_alpha(), r).xi()), 0.5);
  EXPECT_NEAR(impropriety(m), std::pow(std::tanh(std::numbers::sqrt2 * r), 8), 1e-10);
  // Rank-deficient xi: det C = 0.
  const auto sep = analytic_moments(polar_decompose(two_photon_squeezing(separable_uniform_alpha(), r).xi()), 0.5);
  EXPECT_NEAR(impropriety(sep), 0.0, 1e-12);
  EXPECT_GT(frobenius_norm(sep.c), 0.1);
}

TEST(Impropriety, RejectsDegenerateGamma) {
  StateMoments m{ComplexMatrix::zeros(2, 2), ComplexMatrix::zeros(2, 2), 0.5};
  EXPECT_THROW(impropriety(m), NumericalError);
}

TEST(LogDensity, MatchesIsotropicClosedForm) {
  MatrixSampler gen(25);
  for (double r : {0.3, 1.0}) {
    const ComplexMatrix q = gen.symmetric_unitary(3);
    const auto m = analytic_moments(polar_decompose(r * q), 0.5);
    for (int k = 0; k < 50; ++k) {
      std::vector<cplx> beta(3);
      for (auto& z : beta) z = gen.gaussian();
      const double a = log_density(beta, m);
      const double b = log_density_isotropic(beta, r, q, 0.5);
      EXPECT_NEAR(a, b, 1e-8 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST(LogDensity, ProperCaseIsCircularGaussian) {
  const double sigma2 = 0.7;
  const auto m = analytic_moments(polar_decompose(ComplexMatrix::zeros(2, 2)), sigma2);
  const std::vector<cplx> beta{cplx(0.3, -0.2), cplx(1.0, 0.5)};
  const double norm2 = std::norm(beta[0]) + std::norm(beta[1]);
  EXPECT_NEAR(log_density(beta, m), -norm2 / sigma2 - 2.0 * std::log(std::numbers::pi * sigma2), 1e-12);
}

TEST(LogDensity, OneModeIntegratesToOne) {
  // Midpoint rule on [-L, L]^2 for the real and imaginary parts.
  for (double r : {0.0, 0.4, 0.9}) {
    const ComplexMatrix q{{cplx(std::cos(0.7), std::sin(0.7))}};
    const auto m = analytic_moments(polar_decompose(r * q), 0.5);
    const double half = 6.0 * std::sqrt(m.gamma(0, 0).real());
    const int steps = 600;
    const double h = 2.0 * half / steps;
    double total = 0.0;
    for (int i = 0; i < steps; ++i)
      for (int j = 0; j < steps; ++j) {
        const std::vector<cplx> beta{cplx(-half + (i + 0.5) * h, -half + (j + 0.5) * h)};
        total += std::exp(log_density(beta, m));
      }
    EXPECT_NEAR(total * h * h, 1.0, 1e-3);
  }
}

TEST(LogDensity, DimensionMismatch) {
  const auto m = analytic_moments(polar_decompose(ComplexMatrix::zeros(2, 2)), 0.5);
  EXPECT_THROW(log_density(std::vector<cplx>{1.0}, m), InvalidArgument);
}

TEST(Separability, Examples) {
  EXPECT_FALSE(separability_threshold(0.5, 0.0).entangled);
  EXPECT_TRUE(separability_threshold(0.5, 1e-9).entangled);
  EXPECT_EQ(separability_threshold(0.5, 0.3).threshold_r, 0.0);
  const double thr = 0.5 * std::log(2.0);
  EXPECT_NEAR(separability_threshold(1.0, 0.0).threshold_r, thr, 1e-15);
  EXPECT_TRUE(separability_threshold(1.0, thr + 1e-6).entangled);
  EXPECT_FALSE(separability_threshold(1.0, thr - 1e-6).entangled);
  EXPECT_THROW(separability_threshold(0.0, 1.0), InvalidArgument);
}

TEST(Separability, BoundaryProperty) {
  for (double sigma2 : {0.5, 0.75, 1.0, 2.0}) {
    const double thr = separability_threshold(sigma2, 0.0).threshold_r;
    EXPECT_NEAR(sigma2 * std::exp(-2.0 * thr), sigma2 > 0.5 ? 0.5 : sigma2, 1e-12);
    EXPECT_TRUE(separability_threshold(sigma2, thr + 1e-6).entangled);
    EXPECT_FALSE(separability_threshold(sigma2, thr - 1e-6).entangled);
  }
}

TEST(SqueezingSpec, Validation) {
  EXPECT_THROW(SqueezingSpec(ComplexMatrix(2, 3)), InvalidArgument);
  EXPECT_THROW(SqueezingSpec(ComplexMatrix{{0.0, 1.0}, {2.0, 0.0}}), InvalidArgument);
  EXPECT_THROW(SqueezingSpec(ComplexMatrix{{std::nan(""), 0.0}, {0.0, 0.0}}), InvalidArgument);
  EXPECT_NO_THROW(SqueezingSpec(ComplexMatrix{{0.0, cplx(1, 1)}, {cplx(1, 1), 0.0}}));
}

TEST(TwoPhoton, LayoutAndNormalization) {
  const AlphaAmplitudes alpha{cplx(2, 0), cplx(0, 0), cplx(0, 0), cplx(0, 0)};
  const ComplexMatrix xi = two_photon_squeezing(alpha, 0.5).xi();
  EXPECT_EQ(xi(kAH, kBH), cplx(0.5));
  EXPECT_EQ(xi(kBH, kAH), cplx(0.5));
  EXPECT_EQ(xi(kAH, kAH), cplx(0.0));
  EXPECT_THROW(two_photon_squeezing(AlphaAmplitudes{}, 1.0), InvalidArgument);
  const ComplexMatrix s = two_photon_squeezing(singlet_alpha(), 1.0).xi();
  EXPECT_NEAR(s(kAH, kBV).real(), 1.0 / std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(s(kAV, kBH).real(), -1.0 / std::numbers::sqrt2, 1e-15);
}

TEST(TwoMode, Form) {
  const ComplexMatrix xi = symmetric_two_mode_squeezing(0.4, 0.3).xi();
  EXPECT_EQ(xi(0, 0), cplx(0.0));
  EXPECT_NEAR(std::abs(xi(0, 1) - std::polar(0.4, 0.3)), 0.0, 1e-15);
  EXPECT_EQ(xi(1, 0), xi(0, 1));
}

}  // namespace
}  // namespace sqz
