#include "specrings/structdet.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace specrings {

void validate_index_set(const IndexSet& s, int n) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > n) {
      throw std::invalid_argument("index " + std::to_string(s[i]) + " outside [1, " +
                                  std::to_string(n) + "]");
    }
    if (i > 0 && s[i] <= s[i - 1]) throw std::invalid_argument("index set not strictly increasing");
  }
}

IndexSet complement(const IndexSet& s, int n) {
  validate_index_set(s, n);
  IndexSet out;
  out.reserve(static_cast<std::size_t>(n) - s.size());
  std::size_t p = 0;
  for (int i = 1; i <= n; ++i) {
    if (p < s.size() && s[p] == i) {
      ++p;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<IndexSet> subsets_of_size(int n, int k) {
  std::vector<IndexSet> out;
  if (k < 0 || k > n) return out;
  IndexSet cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), 1);
  for (;;) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

cplx leibniz_det(const ComplexMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("leibniz_det: matrix must be square");
  const std::size_t n = a.rows();
  if (n > 10) throw std::invalid_argument("leibniz_det: n > 10 is not supported");
  if (n == 0) return 1.0;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  cplx total = 0.0;
  do {
    // Parity by counting inversions keeps each term independent of the
    // enumeration order.
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    cplx term = inversions % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n && term != cplx{}; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

ComplexMatrix submatrix(const ComplexMatrix& a, const IndexSet& rows, const IndexSet& cols) {
  validate_index_set(rows, static_cast<int>(a.rows()));
  validate_index_set(cols, static_cast<int>(a.cols()));
  ComplexMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      s(i, j) = a(static_cast<std::size_t>(rows[i] - 1), static_cast<std::size_t>(cols[j] - 1));
  return s;
}

ComplexMatrix complement_submatrix(const ComplexMatrix& a, const IndexSet& x, const IndexSet& y) {
  return submatrix(a, complement(x, static_cast<int>(a.rows())),
                   complement(y, static_cast<int>(a.cols())));
}

cplx block_minor_det(const std::vector<ComplexMatrix>& blocks, const IndexSet& x, const IndexSet& y) {
  int n = 0;
  for (const auto& b : blocks) {
    if (!b.is_square()) throw std::invalid_argument("block_minor_det: blocks must be square");
    n += static_cast<int>(b.rows());
  }
  validate_index_set(x, n);
  validate_index_set(y, n);
  if (x.size() != y.size()) throw std::invalid_argument("block_minor_det: |X| != |Y|");

  cplx product = 1.0;
  int offset = 0;
  std::size_t px = 0;
  std::size_t py = 0;
  for (const auto& b : blocks) {
    const int end = offset + static_cast<int>(b.rows());
    IndexSet bx;
    IndexSet by;
    while (px < x.size() && x[px] <= end) bx.push_back(x[px++] - offset);
    while (py < y.size() && y[py] <= end) by.push_back(y[py++] - offset);
    if (bx.size() != by.size()) return 0.0;
    if (!bx.empty()) product *= leibniz_det(submatrix(b, bx, by));
    offset = end;
  }
  return product;
}

cplx bidiag_minor_det(const ComplexMatrix& a, const IndexSet& x, const IndexSet& y) {
  if (!a.is_square()) throw std::invalid_argument("bidiag_minor_det: matrix must be square");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && j != i + 1 && a(i, j) != cplx{}) {
        throw std::invalid_argument("bidiag_minor_det: matrix is not upper bidiagonal");
      }
  validate_index_set(x, static_cast<int>(n));
  validate_index_set(y, static_cast<int>(n));
  if (x.size() != y.size()) throw std::invalid_argument("bidiag_minor_det: |X| != |Y|");
  cplx product = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    product *= a(static_cast<std::size_t>(x[i] - 1), static_cast<std::size_t>(y[i] - 1));
  }
  return product;
}

cplx jordan_minor_det(cplx z, int n, const IndexSet& x, const IndexSet& y) {
  validate_index_set(x, n);
  validate_index_set(y, n);
  if (x.size() != y.size()) throw std::invalid_argument("jordan_minor_det: |X| != |Y|");
  cplx product = 1.0;
  const std::size_t k = x.size();
  for (std::size_t i = 0; i < k; ++i) {
    const bool below_next = i + 1 == k || x[i] < y[i + 1];
    if (!(y[i] <= x[i] && below_next)) return 0.0;
    for (int p = 0; p < x[i] - y[i]; ++p) product *= z;
  }
  return product;
}

int front_permutation_sign(const IndexSet& z) {
  long long s = 0;
  for (int v : z) s += v;
  const long long k = static_cast<long long>(z.size());
  return (s - k * (k + 1) / 2) % 2 == 0 ? 1 : -1;
}

cplx det_sum_decomposition(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw std::invalid_argument("det_sum_decomposition: matrices must be square and equal size");
  }
  const int n = static_cast<int>(a.rows());
  if (n > 6) throw std::invalid_argument("det_sum_decomposition: n > 6 is not supported");
  cplx total = 0.0;
  for (int k = 0; k <= n; ++k) {
    const auto sets = subsets_of_size(n, k);
    for (const auto& x : sets) {
      for (const auto& y : sets) {
        const cplx db = leibniz_det(submatrix(b, x, y));
        if (db == cplx{}) continue;
        const cplx da = leibniz_det(complement_submatrix(a, x, y));
        const int sign = front_permutation_sign(x) * front_permutation_sign(y);
        total += static_cast<double>(sign) * da * db;
      }
    }
  }
  return total;
}

}  // namespace specrings
