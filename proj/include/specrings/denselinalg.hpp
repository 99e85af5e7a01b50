#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "specrings/matrix.hpp"

namespace specrings {

// ln|det| with a -inf sentinel for exactly singular input. `phase` is
// det/|det| (1 when singular), tracked so that callers can rebuild det.
struct LogDet {
  double log_abs = 0.0;
  bool is_singular = false;
  cplx phase{1.0, 0.0};
};

// ln|det(A - shift I)| from LU with partial pivoting by maximum modulus,
// accumulated as the sum of ln|u_kk|.
LogDet lu_log_abs_det(const ComplexMatrix& a, cplx shift = {0.0, 0.0});

// Diagonal similarity D^-1 A D with power-of-two entries (Parlett-Reinsch)
// that roughly equalizes off-diagonal row and column norms.
ComplexMatrix balance(const ComplexMatrix& a);

// Upper Hessenberg matrix unitarily similar to A (Householder reduction).
ComplexMatrix hessenberg(const ComplexMatrix& a);

struct Spectrum {
  std::vector<cplx> eigenvalues;
  long iterations = 0;
  bool converged = true;
};

struct EigenOptions {
  // Deflate when |h(k+1,k)| <= tol * (|h(k,k)| + |h(k+1,k+1)|).
  double deflation_tol = 1e-12;
  // Total sweep cap is sweep_factor * N.
  int sweep_factor = 40;
  bool balance = true;
};

// All eigenvalues via balancing, Hessenberg reduction and complex
// single-shift QR with Wilkinson shifts. On hitting the sweep cap the
// result has converged = false and holds only the deflated eigenvalues.
Spectrum eigenvalues(const ComplexMatrix& a, const EigenOptions& opts = {});

// QR iteration on an upper Hessenberg matrix (no balancing or reduction).
Spectrum hessenberg_eigenvalues(ComplexMatrix h, const EigenOptions& opts = {});

// Lower estimate of ||A||_op by power iteration on A^H A from a seeded
// random start.
double op_norm_estimate(const ComplexMatrix& a, int iters, std::uint64_t seed = 0x6f706e6f726dULL);

}  // namespace specrings
