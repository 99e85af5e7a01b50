#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace specrings {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Entries are finite on construction.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t nrows, std::size_t ncols);
  ComplexMatrix(std::size_t nrows, std::size_t ncols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix zeros(std::size_t n) { return ComplexMatrix(n, n); }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> diag);

  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return ncols_; }
  bool is_square() const { return nrows_ == ncols_; }
  bool empty() const { return entries_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * ncols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * ncols_ + j]; }

  cplx* row(std::size_t i) { return entries_.data() + i * ncols_; }
  const cplx* row(std::size_t i) const { return entries_.data() + i * ncols_; }

  std::span<const cplx> data() const { return entries_; }
  std::span<cplx> data() { return entries_; }

  bool all_finite() const;
  bool is_real() const;
  double frobenius_norm() const;
  cplx trace() const;

  ComplexMatrix transpose() const;
  ComplexMatrix adjoint() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<cplx> entries_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, const ComplexMatrix& a);

std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const cplx> x);

}  // namespace specrings
