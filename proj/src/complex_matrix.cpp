#include "sqz/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "sqz/error.hpp"

namespace sqz {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidArgument("ComplexMatrix: entry count does not match rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidArgument("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix c = *this;
  for (auto& z : c.data_) z = std::conj(z);
  return c;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<cplx> operator*(const ComplexMatrix& a, std::span<const cplx> x) {
  if (a.cols() != x.size()) throw InvalidArgument("matrix-vector product: size mismatch");
  std::vector<cplx> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (cplx z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("max_abs_diff: shape mismatch");
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
  return m;
}

}  // namespace sqz
