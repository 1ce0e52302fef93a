#pragma once

#include <vector>

#include "sqz/complex_matrix.hpp"

namespace sqz {

// Relative tolerances shared by the structural checks below.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kReconstructionTol = 1e-9;

struct EigenResult {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // columns are eigenvectors
};

struct SvdResult {
  ComplexMatrix u;
  std::vector<double> d;  // descending, >= 0
  ComplexMatrix v;
};

/// Hermitian PSD factor and unitary factor of xi = R Q.
struct PolarForm {
  ComplexMatrix r_part;
  ComplexMatrix q_part;

  std::size_t dim() const { return r_part.rows(); }
};

enum class MatrixFunction { Cosh, Sinh, Exp, CoshOfDouble };

bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianTol);
bool is_symmetric(const ComplexMatrix& m, double rel_tol = kHermitianTol);
bool is_unitary(const ComplexMatrix& m, double tol = kReconstructionTol);

/// Cyclic complex Jacobi. The input is symmetrized as (m + m^H)/2 after the
/// Hermitian check. Throws InvalidArgument for non-square or non-Hermitian
/// input and NumericalError if the sweeps do not converge.
EigenResult eig_hermitian(const ComplexMatrix& m);

/// One-sided (Hestenes) Jacobi SVD for square matrices: m = U diag(d) V^H.
/// Columns of U belonging to zero singular values are completed to an
/// orthonormal basis.
SvdResult svd(const ComplexMatrix& m);

/// Polar form of a complex symmetric matrix through its SVD:
/// R = U D U^H, Q = U V^H. The exact zero matrix maps to (0, I).
PolarForm polar_decompose(const ComplexMatrix& xi);

/// f(m) for Hermitian PSD m, evaluated on the spectrum. Eigenvalues in
/// [-tol, 0) are clamped to zero; anything more negative is rejected.
ComplexMatrix hermitian_matrix_function(const ComplexMatrix& m, MatrixFunction f);

/// LU with partial pivoting.
cplx determinant(const ComplexMatrix& m);

/// Solves m x = b by LU with partial pivoting. Throws NumericalError when m is
/// singular to working precision.
std::vector<cplx> solve(const ComplexMatrix& m, std::span<const cplx> b);

}  // namespace sqz
