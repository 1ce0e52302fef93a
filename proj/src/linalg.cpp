#include "sqz/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sqz/error.hpp"

namespace sqz {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square(const ComplexMatrix& m, const char* who) {
  if (!m.is_square() || m.rows() == 0) throw InvalidArgument(std::string(who) + ": expected a non-empty square matrix");
}

// Unitary 2x2 block acting on columns (p, q). It takes the Hermitian block
// [[a, b], [conj(b), d]] to diagonal form under J^H (.) J.
struct JacobiRotation {
  cplx pp, pq, qp, qq;
};

JacobiRotation hermitian_rotation(double a, cplx b, double d) {
  const double ab = std::abs(b);
  const cplx phase_conj = std::conj(b) / ab;
  const double zeta = (d - a) / (2.0 * ab);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  return {c, s, -s * phase_conj, c * phase_conj};
}

void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const JacobiRotation& j) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const cplx mp = m(k, p);
    const cplx mq = m(k, q);
    m(k, p) = mp * j.pp + mq * j.qp;
    m(k, q) = mp * j.pq + mq * j.qq;
  }
}

void rotate_rows_adjoint(ComplexMatrix& m, std::size_t p, std::size_t q, const JacobiRotation& j) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const cplx mp = m(p, k);
    const cplx mq = m(q, k);
    m(p, k) = std::conj(j.pp) * mp + std::conj(j.qp) * mq;
    m(q, k) = std::conj(j.pq) * mp + std::conj(j.qq) * mq;
  }
}

std::vector<std::size_t> descending_order(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

ComplexMatrix permute_columns(const ComplexMatrix& m, const std::vector<std::size_t>& order) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t j = 0; j < order.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, order[j]);
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

// Fills columns of u flagged in `missing` with unit vectors orthogonal to all
// other columns (modified Gram-Schmidt, two passes, standard basis candidates).
void complete_orthonormal(ComplexMatrix& u, const std::vector<bool>& missing) {
  const std::size_t n = u.rows();
  std::vector<bool> filled(missing.size());
  for (std::size_t j = 0; j < missing.size(); ++j) filled[j] = !missing[j];
  std::size_t candidate = 0;
  for (std::size_t j = 0; j < missing.size(); ++j) {
    if (!missing[j]) continue;
    bool placed = false;
    while (!placed && candidate < n) {
      std::vector<cplx> v(n);
      v[candidate++] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < missing.size(); ++k) {
          if (!filled[k]) continue;
          cplx proj = 0.0;
          for (std::size_t i = 0; i < n; ++i) proj += std::conj(u(i, k)) * v[i];
          for (std::size_t i = 0; i < n; ++i) v[i] -= proj * u(i, k);
        }
      }
      double norm = 0.0;
      for (cplx z : v) norm += std::norm(z);
      norm = std::sqrt(norm);
      if (norm > 1e-6) {
        for (std::size_t i = 0; i < n; ++i) u(i, j) = v[i] / norm;
        filled[j] = true;
        placed = true;
      }
    }
    if (!placed) throw NumericalError("svd: could not complete the left singular basis");
  }
}

struct LuFactors {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

LuFactors lu_decompose(const ComplexMatrix& m) {
  LuFactors f{m, {}, 1, false};
  const std::size_t n = m.rows();
  f.perm.resize(n);
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  auto& a = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        piv = i;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx factor = a(i, k) / a(k, k);
      a(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return f;
}

}  // namespace

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (!m.is_square()) return false;
  return frobenius_norm(m - m.adjoint()) <= rel_tol * (1.0 + frobenius_norm(m));
}

bool is_symmetric(const ComplexMatrix& m, double rel_tol) {
  if (!m.is_square()) return false;
  return frobenius_norm(m - m.transpose()) <= rel_tol * (1.0 + frobenius_norm(m));
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.rows())) <= tol;
}

EigenResult eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "eig_hermitian");
  if (!is_hermitian(m)) throw InvalidArgument("eig_hermitian: matrix is not Hermitian");
  const std::size_t n = m.rows();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = frobenius_norm(a);

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= kEps * scale || off == 0.0) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        if (std::abs(b) <= 1e-300) continue;
        const auto rot = hermitian_rotation(a(p, p).real(), b, a(q, q).real());
        rotate_columns(a, p, q, rot);
        rotate_rows_adjoint(a, p, q, rot);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, rot);
      }
    }
  }
  if (!converged) throw NumericalError("eig_hermitian: Jacobi sweeps did not converge");

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
  const auto order = descending_order(values);
  EigenResult out;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = values[order[j]];
  out.vectors = permute_columns(v, order);
  return out;
}

SvdResult svd(const ComplexMatrix& m) {
  require_square(m, "svd");
  if (!m.all_finite()) throw InvalidArgument("svd: non-finite entries");
  const std::size_t n = m.rows();
  ComplexMatrix w = m;
  ComplexMatrix v = ComplexMatrix::identity(n);

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          alpha += std::norm(w(k, p));
          beta += std::norm(w(k, q));
          gamma += std::conj(w(k, p)) * w(k, q);
        }
        if (std::abs(gamma) <= 4.0 * kEps * std::sqrt(alpha * beta) || std::abs(gamma) <= 1e-300) continue;
        rotated = true;
        const auto rot = hermitian_rotation(alpha, gamma, beta);
        rotate_columns(w, p, q, rot);
        rotate_columns(v, p, q, rot);
      }
    }
    converged = !rotated;
  }
  if (!converged) throw NumericalError("svd: one-sided Jacobi did not converge");

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += std::norm(w(k, j));
    sigma[j] = std::sqrt(s);
  }
  const auto order = descending_order(sigma);
  SvdResult out;
  out.d.resize(n);
  out.v = permute_columns(v, order);
  ComplexMatrix ws = permute_columns(w, order);
  out.u = ComplexMatrix(n, n);

  const double rank_tol = static_cast<double>(n) * kEps * (sigma.empty() ? 0.0 : sigma[order[0]]);
  std::vector<bool> missing(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = sigma[order[j]];
    if (s <= rank_tol || s == 0.0) {
      out.d[j] = 0.0;
      missing[j] = true;
      continue;
    }
    out.d[j] = s;
    for (std::size_t i = 0; i < n; ++i) out.u(i, j) = ws(i, j) / s;
  }
  if (std::find(missing.begin(), missing.end(), true) != missing.end()) complete_orthonormal(out.u, missing);
  return out;
}

PolarForm polar_decompose(const ComplexMatrix& xi) {
  require_square(xi, "polar_decompose");
  if (!is_symmetric(xi)) throw InvalidArgument("polar_decompose: squeezing matrix is not symmetric");
  const std::size_t n = xi.rows();
  const auto e = xi.entries();
  if (std::all_of(e.begin(), e.end(), [](cplx z) { return z == cplx{0.0, 0.0}; })) {
    return {ComplexMatrix::zeros(n, n), ComplexMatrix::identity(n)};
  }
  const SvdResult s = svd(xi);
  PolarForm p;
  p.r_part = hermitian_part(s.u * ComplexMatrix::diagonal(std::span<const double>(s.d)) * s.u.adjoint());
  p.q_part = s.u * s.v.adjoint();
  return p;
}

ComplexMatrix hermitian_matrix_function(const ComplexMatrix& m, MatrixFunction f) {
  const EigenResult eig = eig_hermitian(m);
  const double floor = -kHermitianTol * (1.0 + frobenius_norm(m));
  std::vector<double> fv(eig.values.size());
  for (std::size_t i = 0; i < fv.size(); ++i) {
    double x = eig.values[i];
    if (x < floor) throw InvalidArgument("hermitian_matrix_function: matrix is not positive semi-definite");
    x = std::max(x, 0.0);
    switch (f) {
      case MatrixFunction::Cosh: fv[i] = std::cosh(x); break;
      case MatrixFunction::Sinh: fv[i] = std::sinh(x); break;
      case MatrixFunction::Exp: fv[i] = std::exp(x); break;
      case MatrixFunction::CoshOfDouble: fv[i] = std::cosh(2.0 * x); break;
    }
  }
  return hermitian_part(eig.vectors * ComplexMatrix::diagonal(std::span<const double>(fv)) * eig.vectors.adjoint());
}

cplx determinant(const ComplexMatrix& m) {
  require_square(m, "determinant");
  const LuFactors f = lu_decompose(m);
  if (f.singular) return 0.0;
  cplx det = static_cast<double>(f.sign);
  for (std::size_t i = 0; i < m.rows(); ++i) det *= f.lu(i, i);
  return det;
}

std::vector<cplx> solve(const ComplexMatrix& m, std::span<const cplx> b) {
  require_square(m, "solve");
  if (b.size() != m.rows()) throw InvalidArgument("solve: right-hand side has the wrong length");
  const LuFactors f = lu_decompose(m);
  const std::size_t n = m.rows();
  const double scale = frobenius_norm(m);
  for (std::size_t i = 0; i < n; ++i) {
    if (f.singular || std::abs(f.lu(i, i)) <= static_cast<double>(n) * kEps * scale) {
      throw NumericalError("solve: matrix is singular to working precision");
    }
  }
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) acc -= f.lu(i, j) * x[j];
    x[i] = acc;
  }
  for (std::size_t i = n; i-- > 0;) {
    cplx acc = x[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= f.lu(i, j) * x[j];
    x[i] = acc / f.lu(i, i);
  }
  return x;
}

}  // namespace sqz
