#include "specrings/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace specrings {

ComplexMatrix::ComplexMatrix(std::size_t nrows, std::size_t ncols)
    : nrows_(nrows), ncols_(ncols), entries_(nrows * ncols, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t nrows, std::size_t ncols, std::vector<cplx> entries)
    : nrows_(nrows), ncols_(ncols), entries_(std::move(entries)) {
  if (entries_.size() != nrows_ * ncols_) {
    throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
  }
  if (!all_finite()) throw std::invalid_argument("ComplexMatrix: non-finite entry");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : nrows_(rows.size()), ncols_(rows.size() ? rows.begin()->size() : 0) {
  entries_.reserve(nrows_ * ncols_);
  for (const auto& r : rows) {
    if (r.size() != ncols_) throw std::invalid_argument("ComplexMatrix: ragged initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw std::invalid_argument("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& v : entries_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

bool ComplexMatrix::is_real() const {
  for (const auto& v : entries_) {
    if (v.imag() != 0.0) return false;
  }
  return true;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : entries_) s += std::norm(v);
  return std::sqrt(s);
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace: matrix not square");
  cplx t = 0.0;
  for (std::size_t i = 0; i < nrows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(ncols_, nrows_);
  for (std::size_t i = 0; i < nrows_; ++i)
    for (std::size_t j = 0; j < ncols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(ncols_, nrows_);
  for (std::size_t i = 0; i < nrows_; ++i)
    for (std::size_t j = 0; j < ncols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

namespace {
void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix shape mismatch");
  }
}
}  // namespace

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  ComplexMatrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < cd.size(); ++k) cd[k] += bd[k];
  return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  ComplexMatrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < cd.size(); ++k) cd[k] -= bd[k];
  return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimension mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx* ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      const cplx* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  ComplexMatrix c = a;
  for (auto& v : c.data()) v *= s;
  return c;
}

std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const cplx> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<cplx> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const cplx* ai = a.row(i);
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

}  // namespace specrings
