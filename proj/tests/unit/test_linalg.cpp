#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sqz/error.hpp"
#include "sqz/gaussian_model.hpp"
#include "sqz/linalg.hpp"
#include "sqz/random_matrices.hpp"

namespace sqz {
namespace {

// Brute-force Laplace expansion along the first row.
cplx cofactor_determinant(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  cplx det = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    ComplexMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != col) minor(i - 1, k++) = m(i, j);
    det += (col % 2 == 0 ? 1.0 : -1.0) * m(0, col) * cofactor_determinant(minor);
  }
  return det;
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

ComplexMatrix singlet_pairing() {
  return ComplexMatrix{{0, 0, 0, 1}, {0, 0, -1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}};
}

TEST(EigHermitian, IdentityHasUnitSpectrum) {
  const auto e = eig_hermitian(ComplexMatrix::identity(3));
  for (double v : e.values) EXPECT_DOUBLE_EQ(v, 1.0);
  EXPECT_TRUE(is_unitary(e.vectors));
}

TEST(EigHermitian, DiagonalIsSortedDescending) {
  const auto e = eig_hermitian(ComplexMatrix{{-1.0, 0.0}, {0.0, 2.0}});
  EXPECT_DOUBLE_EQ(e.values[0], 2.0);
  EXPECT_DOUBLE_EQ(e.values[1], -1.0);
  EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors(0, 1)), 1.0, 1e-15);
}

TEST(EigHermitian, ReconstructsRandomHermitian) {
  MatrixSampler gen(11);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix m = gen.hermitian(4);
    const auto e = eig_hermitian(m);
    const ComplexMatrix back = e.vectors * ComplexMatrix::diagonal(std::span<const double>(e.values)) * e.vectors.adjoint();
    EXPECT_LE(max_abs_diff(back, m), 1e-10 * frobenius_norm(m));
    EXPECT_TRUE(is_unitary(e.vectors, 1e-10));
    // Independent route: Eigen's self-adjoint solver (ascending order).
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(to_eigen(m));
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(e.values[i], ref.eigenvalues()(3 - i), 1e-10);
  }
}

TEST(EigHermitian, RejectsBadInput) {
  EXPECT_THROW(eig_hermitian(ComplexMatrix(2, 3)), InvalidArgument);
  EXPECT_THROW(eig_hermitian(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}), InvalidArgument);
}

TEST(Svd, ZeroMatrix) {
  const auto s = svd(ComplexMatrix::zeros(3, 3));
  for (double d : s.d) EXPECT_EQ(d, 0.0);
  EXPECT_TRUE(is_unitary(s.u));
  EXPECT_TRUE(is_unitary(s.v));
}

TEST(Svd, UnitaryHasUnitSingularValues) {
  MatrixSampler gen(12);
  const auto s = svd(gen.unitary(5));
  for (double d : s.d) EXPECT_NEAR(d, 1.0, 1e-12);
}

TEST(Svd, SeparableTwoPhotonMatrix) {
  const double r = 0.8;
  const auto s = svd(two_photon_squeezing(separable_uniform_alpha(), r).xi());
  EXPECT_NEAR(s.d[0], r, 1e-12);
  EXPECT_NEAR(s.d[1], r, 1e-12);
  EXPECT_NEAR(s.d[2], 0.0, 1e-12);
  EXPECT_NEAR(s.d[3], 0.0, 1e-12);
  EXPECT_TRUE(is_unitary(s.u));
  EXPECT_TRUE(is_unitary(s.v));
}

TEST(Svd, InvariantsOnRandomMatrices) {
  MatrixSampler gen(13);
  for (int k = 0; k < 20; ++k) {
    const std::size_t d = 1 + static_cast<std::size_t>(k % 8);
    const ComplexMatrix m = gen.ginibre(d);
    const auto s = svd(m);
    const ComplexMatrix back = s.u * ComplexMatrix::diagonal(std::span<const double>(s.d)) * s.v.adjoint();
    EXPECT_LE(max_abs_diff(back, m), 1e-9 * (1.0 + frobenius_norm(m)));
    EXPECT_TRUE(is_unitary(s.u));
    EXPECT_TRUE(is_unitary(s.v));
    EXPECT_TRUE(std::is_sorted(s.d.rbegin(), s.d.rend()));
    Eigen::JacobiSVD<Eigen::MatrixXcd> ref(to_eigen(m));
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(s.d[i], ref.singularValues()(i), 1e-10);
  }
}

TEST(Svd, RankDeficientStillUnitary) {
  MatrixSampler gen(14);
  const ComplexMatrix a = gen.ginibre(5);
  ComplexMatrix low = a;
  for (std::size_t i = 0; i < 5; ++i) {
    low(i, 3) = 2.0 * a(i, 0);
    low(i, 4) = cplx(0, 1) * a(i, 1);
  }
  const auto s = svd(low);
  EXPECT_NEAR(s.d[3], 0.0, 1e-12);
  EXPECT_NEAR(s.d[4], 0.0, 1e-12);
  EXPECT_TRUE(is_unitary(s.u));
  EXPECT_LE(max_abs_diff(s.u * ComplexMatrix::diagonal(std::span<const double>(s.d)) * s.v.adjoint(), low), 1e-9);
}

TEST(Svd, UnitaryInvariance) {
  MatrixSampler gen(15);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix a = gen.ginibre(4);
    const auto d0 = svd(a).d;
    const auto d1 = svd(gen.unitary(4) * a * gen.unitary(4)).d;
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(d0[i], d1[i], 1e-9);
  }
}

TEST(Polar, ZeroGivesIdentityFactor) {
  const auto p = polar_decompose(ComplexMatrix::zeros(3, 3));
  EXPECT_EQ(p.r_part, ComplexMatrix::zeros(3, 3));
  EXPECT_EQ(p.q_part, ComplexMatrix::identity(3));
}

TEST(Polar, ScaledIdentity) {
  const auto p = polar_decompose(0.7 * ComplexMatrix::identity(3));
  EXPECT_LE(max_abs_diff(p.r_part, 0.7 * ComplexMatrix::identity(3)), 1e-14);
  EXPECT_LE(max_abs_diff(p.q_part, ComplexMatrix::identity(3)), 1e-14);
}

TEST(Polar, SingletHasIsotropicR) {
  const double r = 1.3;
  const ComplexMatrix xi = two_photon_squeezing(singlet_alpha(), r).xi();
  const auto p = polar_decompose(xi);
  EXPECT_LE(max_abs_diff(p.r_part, (r / std::numbers::sqrt2) * ComplexMatrix::identity(4)), 1e-12);
  EXPECT_LE(max_abs_diff(p.r_part * p.q_part, xi), 1e-12);
  EXPECT_TRUE(is_unitary(p.q_part));
  // With R a multiple of I the unitary factor is unique.
  EXPECT_LE(max_abs_diff(p.q_part, singlet_pairing()), 1e-12);
}

TEST(Polar, RandomSymmetricInvariants) {
  MatrixSampler gen(16);
  for (int k = 0; k < 30; ++k) {
    const std::size_t d = 1 + static_cast<std::size_t>(k % 7);
    const ComplexMatrix xi = gen.symmetric(d, 3.0);
    const auto p = polar_decompose(xi);
    const double tol = 1e-9 * (1.0 + frobenius_norm(xi));
    EXPECT_TRUE(is_hermitian(p.r_part, 1e-12));
    EXPECT_GE(eig_hermitian(p.r_part).values.back(), -tol);
    EXPECT_TRUE(is_unitary(p.q_part, tol));
    EXPECT_LE(max_abs_diff(p.r_part * p.q_part, xi), tol);
  }
}

TEST(Polar, RejectsAsymmetric) {
  EXPECT_THROW(polar_decompose(ComplexMatrix{{0.0, 1.0}, {0.5, 0.0}}), InvalidArgument);
}

TEST(MatrixFunction, AtZero) {
  const auto z = ComplexMatrix::zeros(3, 3);
  EXPECT_LE(max_abs_diff(hermitian_matrix_function(z, MatrixFunction::Cosh), ComplexMatrix::identity(3)), 1e-15);
  EXPECT_LE(max_abs_diff(hermitian_matrix_function(z, MatrixFunction::Sinh), z), 1e-15);
}

TEST(MatrixFunction, Diagonal) {
  const std::vector<double> lam{0.3, 1.7};
  const ComplexMatrix m = ComplexMatrix::diagonal(std::span<const double>(lam));
  const ComplexMatrix ch = hermitian_matrix_function(m, MatrixFunction::Cosh);
  EXPECT_NEAR(ch(0, 0).real(), std::cosh(0.3), 1e-14);
  EXPECT_NEAR(ch(1, 1).real(), std::cosh(1.7), 1e-14);
  EXPECT_NEAR(std::abs(ch(0, 1)), 0.0, 1e-15);
  const ComplexMatrix c2 = hermitian_matrix_function(m, MatrixFunction::CoshOfDouble);
  EXPECT_NEAR(c2(1, 1).real(), std::cosh(3.4), 1e-13);
  const ComplexMatrix ex = hermitian_matrix_function(m, MatrixFunction::Exp);
  EXPECT_NEAR(ex(0, 0).real(), std::exp(0.3), 1e-14);
}

TEST(MatrixFunction, HyperbolicIdentityOnRandomPsd) {
  MatrixSampler gen(17);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix r = gen.hermitian_psd(4, 2.0);
    const ComplexMatrix ch = hermitian_matrix_function(r, MatrixFunction::Cosh);
    const ComplexMatrix sh = hermitian_matrix_function(r, MatrixFunction::Sinh);
    EXPECT_LE(max_abs_diff(ch * ch - sh * sh, ComplexMatrix::identity(4)), 1e-9);
    EXPECT_TRUE(is_hermitian(ch, 1e-10));
  }
}

TEST(MatrixFunction, ClampsTinyNegativesRejectsLarge) {
  const ComplexMatrix tiny{{-1e-13, 0.0}, {0.0, 1.0}};
  EXPECT_NO_THROW(hermitian_matrix_function(tiny, MatrixFunction::Sinh));
  const ComplexMatrix neg{{-0.5, 0.0}, {0.0, 1.0}};
  EXPECT_THROW(hermitian_matrix_function(neg, MatrixFunction::Cosh), InvalidArgument);
  EXPECT_THROW(hermitian_matrix_function(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, MatrixFunction::Cosh),
               InvalidArgument);
}

TEST(Determinant, ClosedForms) {
  EXPECT_EQ(determinant(ComplexMatrix::identity(5)), cplx(1.0));
  const std::vector<cplx> diag{2.0, cplx(0.0, 3.0)};
  const cplx d = determinant(ComplexMatrix::diagonal(std::span<const cplx>(diag)));
  EXPECT_NEAR(std::abs(d - cplx(0.0, 6.0)), 0.0, 1e-15);
  const ComplexMatrix two{{cplx(1, 2), cplx(3, -1)}, {cplx(0, 1), cplx(2, 2)}};
  EXPECT_NEAR(std::abs(determinant(two) - (two(0, 0) * two(1, 1) - two(0, 1) * two(1, 0))), 0.0, 1e-14);
}

TEST(Determinant, MatchesCofactorExpansion) {
  MatrixSampler gen(18);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix m = gen.ginibre(4);
    const cplx ref = cofactor_determinant(m);
    EXPECT_LE(std::abs(determinant(m) - ref), 1e-12 * (1.0 + std::abs(ref)));
  }
}

TEST(Determinant, Multiplicative) {
  MatrixSampler gen(19);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix a = gen.ginibre(4);
    const ComplexMatrix b = gen.ginibre(4);
    const cplx rhs = determinant(a) * determinant(b);
    EXPECT_LE(std::abs(determinant(a * b) - rhs), 1e-8 * std::abs(rhs));
  }
}

TEST(Determinant, SingularAndNonSquare) {
  EXPECT_EQ(determinant(ComplexMatrix{{1.0, 2.0}, {2.0, 4.0}}), cplx(0.0));
  EXPECT_THROW(determinant(ComplexMatrix(2, 3)), InvalidArgument);
}

TEST(Solve, RoundTrip) {
  MatrixSampler gen(20);
  const ComplexMatrix m = gen.ginibre(6);
  std::vector<cplx> x(6);
  for (auto& z : x) z = gen.gaussian();
  const auto b = m * std::span<const cplx>(x);
  const auto y = solve(m, b);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(std::abs(y[i] - x[i]), 0.0, 1e-11);
  EXPECT_THROW(solve(ComplexMatrix{{1.0, 2.0}, {2.0, 4.0}}, std::vector<cplx>{1.0, 1.0}), NumericalError);
}

}  // namespace
}  // namespace sqz
