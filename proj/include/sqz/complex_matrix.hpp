#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sqz {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Sized for the small (d <= 16) operators
/// of the model; no expression templates, every product allocates.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const cplx> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const cplx> entries() const { return data_; }
  std::span<cplx> entries() { return data_; }

  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  ComplexMatrix adjoint() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  bool all_finite() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);

std::vector<cplx> operator*(const ComplexMatrix& a, std::span<const cplx> x);

double frobenius_norm(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace sqz
