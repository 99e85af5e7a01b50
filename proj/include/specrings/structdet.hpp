#pragma once

#include <vector>

#include "specrings/matrix.hpp"

namespace specrings {

// Index sets are 1-based and strictly increasing, mirroring set notation
// for minors. The determinant of a 0 x 0 matrix is 1.
using IndexSet = std::vector<int>;

struct IndexPair {
  IndexSet rows;
  IndexSet cols;
};

// Throws std::invalid_argument unless `s` is strictly increasing within [1, n].
void validate_index_set(const IndexSet& s, int n);

// [n] \ s.
IndexSet complement(const IndexSet& s, int n);

// All subsets of [n] of size k, in lexicographic order.
std::vector<IndexSet> subsets_of_size(int n, int k);

// Exact permutation-sum determinant. n <= 10.
cplx leibniz_det(const ComplexMatrix& a);

// A[rows; cols].
ComplexMatrix submatrix(const ComplexMatrix& a, const IndexSet& rows, const IndexSet& cols);

// A with the rows in X and the columns in Y deleted.
ComplexMatrix complement_submatrix(const ComplexMatrix& a, const IndexSet& x, const IndexSet& y);

// det(A[X;Y]) for A = diag(blocks...), without assembling A: the product of
// the per-block minors when every block receives as many rows as columns,
// and 0 otherwise.
cplx block_minor_det(const std::vector<ComplexMatrix>& blocks, const IndexSet& x, const IndexSet& y);

// det(A[X;Y]) for upper bidiagonal A: product of A(x_i, y_i).
// Throws if A has a nonzero entry off the diagonal and first superdiagonal.
cplx bidiag_minor_det(const ComplexMatrix& a, const IndexSet& x, const IndexSet& y);

// det(U[X^c; Y^c]) for U = I + z T^n (closed form): prod z^(x_i - y_i) when
// y_i <= x_i < y_{i+1} for all i (y_{k+1} = +inf), else 0.
cplx jordan_minor_det(cplx z, int n, const IndexSet& x, const IndexSet& y);

// Sign of the order-preserving permutation that moves the elements of Z to
// the front: (-1)^(sum(Z) - |Z|(|Z|+1)/2).
int front_permutation_sign(const IndexSet& z);

// det(A + B) expanded as the signed sum over |X| = |Y| of
// det(A[X^c; Y^c]) det(B[X; Y]). n <= 6.
cplx det_sum_decomposition(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace specrings
