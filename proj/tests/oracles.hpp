// Independent reference computations used only by the tests. None of these
// share code with the library routines they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "specrings/matrix.hpp"

namespace oracle {

using specrings::ComplexMatrix;
using specrings::cplx;

// Characteristic polynomial coefficients p[0..n] of det(zI - A), p[n] = 1,
// by the Faddeev-LeVerrier recursion. Fine for the tiny n used here.
inline std::vector<cplx> char_poly(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<cplx> p(n + 1);
  p[n] = 1.0;
  ComplexMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    ComplexMatrix am = a * m;
    for (std::size_t i = 0; i < n; ++i) am(i, i) += p[n - k + 1];
    m = am;
    const ComplexMatrix prod = a * m;
    p[n - k] = -prod.trace() / static_cast<double>(k);
  }
  return p;
}

inline cplx horner(const std::vector<cplx>& p, cplx z) {
  cplx v = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * z + p[i];
  return v;
}

// Roots of a monic polynomial (Durand-Kerner, then Newton polish).
inline std::vector<cplx> poly_roots(const std::vector<cplx>& p) {
  const std::size_t n = p.size() - 1;
  double bound = 0.0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::abs(p[i]));
  const double rad = 1.0 + bound;
  std::vector<cplx> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = std::polar(0.5 * rad, 0.4 + 2.0 * std::numbers::pi * i / n);
  for (int it = 0; it < 5000; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx den = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= r[i] - r[j];
      const cplx step = horner(p, r[i]) / den;
      r[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15 * rad) break;
  }
  std::vector<cplx> dp(n);
  for (std::size_t i = 1; i <= n; ++i) dp[i - 1] = p[i] * static_cast<double>(i);
  for (auto& z : r) {
    for (int it = 0; it < 3; ++it) {
      const cplx d = horner(dp, z);
      if (std::abs(d) == 0.0) break;
      z -= horner(p, z) / d;
    }
  }
  return r;
}

inline std::vector<cplx> eig_oracle(const ComplexMatrix& a) { return poly_roots(char_poly(a)); }

// Largest distance under the best one-to-one pairing. Exhaustive for small
// sets, greedy nearest-neighbour otherwise.
inline double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  if (n <= 8) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  double worst = 0.0;
  std::vector<bool> used(n, false);
  for (const cplx x : a) {
    std::size_t arg = 0;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j] && std::abs(x - b[j]) < d) {
        d = std::abs(x - b[j]);
        arg = j;
      }
    used[arg] = true;
    worst = std::max(worst, d);
  }
  return worst;
}

// Trapezoid rule for the log potential of the uniform measure on |x - c| = r.
inline double circle_potential_quadrature(cplx c, double r, cplx z, int points = 256) {
  double s = 0.0;
  for (int j = 0; j < points; ++j) {
    const cplx x = c + std::polar(r, 2.0 * std::numbers::pi * j / points);
    s += std::log(std::abs(z - x));
  }
  return s / points;
}

// Determinant by Gaussian elimination without any pivoting refinements,
// used where Leibniz would be too slow (n up to 8).
inline cplx gauss_det(ComplexMatrix a) {
  const std::size_t n = a.rows();
  cplx det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

}  // namespace oracle
