#include "specrings/denselinalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specrings/rng.hpp"

namespace specrings {

namespace {

// Plain complex products. std::complex operator* carries an inf/nan
// recovery path that blocks vectorization of the inner loops.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}
inline cplx mul_conj(cplx a, cplx b) {  // conj(a) * b
  return {a.real() * b.real() + a.imag() * b.imag(), a.real() * b.imag() - a.imag() * b.real()};
}
inline double mul(double a, double b) { return a * b; }
inline double mul_conj(double a, double b) { return a * b; }
inline double conj_of(double a) { return a; }
inline cplx conj_of(cplx a) { return std::conj(a); }
inline double abs1(cplx a) { return std::abs(a.real()) + std::abs(a.imag()); }

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) throw std::invalid_argument(std::string(what) + ": matrix must be square");
}

// Householder reduction of a dense row-major n x n buffer, in place.
template <typename T>
void reduce_to_hessenberg(std::vector<T>& h, std::size_t n) {
  std::vector<T> v(n);
  std::vector<T> w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;  // length of the reflected segment
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale = std::max(scale, std::abs(h[i * n + k]));
    if (scale == 0.0) continue;
    double sumsq = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) sumsq += std::norm(h[i * n + k] / scale);
    if (sumsq == 0.0) continue;  // already zero below the subdiagonal
    const T x0 = h[(k + 1) * n + k];
    const double x0abs = std::abs(x0);
    const double alpha = scale * std::sqrt(std::norm(x0 / scale) + sumsq);
    const T unit = x0abs == 0.0 ? T(1.0) : x0 / x0abs;
    const T beta = -unit * alpha;
    // v = x - beta e1; H = I - 2 v v^H / (v^H v)
    v[0] = x0 - beta;
    for (std::size_t i = 1; i < m; ++i) v[i] = h[(k + 1 + i) * n + k];
    double vnorm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) vnorm2 += std::norm(v[i]);
    const double c = 2.0 / vnorm2;

    // Left: rows k+1.., columns k+1.. (column k is set explicitly).
    std::fill(w.begin(), w.end(), T(0.0));
    for (std::size_t i = 0; i < m; ++i) {
      const T vi = v[i];
      const T* hi = &h[(k + 1 + i) * n];
      for (std::size_t j = k + 1; j < n; ++j) w[j] += mul_conj(vi, hi[j]);
    }
    for (std::size_t i = 0; i < m; ++i) {
      const T f = c * v[i];
      T* hi = &h[(k + 1 + i) * n];
      for (std::size_t j = k + 1; j < n; ++j) hi[j] -= mul(f, w[j]);
    }
    h[(k + 1) * n + k] = beta;
    for (std::size_t i = k + 2; i < n; ++i) h[i * n + k] = T(0.0);

    // Right: all rows, columns k+1..
    for (std::size_t r = 0; r < n; ++r) {
      T* hr = &h[r * n + k + 1];
      T s(0.0);
      for (std::size_t j = 0; j < m; ++j) s += mul(hr[j], v[j]);
      s *= c;
      for (std::size_t j = 0; j < m; ++j) hr[j] -= mul(s, conj_of(v[j]));
    }
  }
}

ComplexMatrix hessenberg_impl(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  if (a.is_real()) {
    std::vector<double> h(n * n);
    auto ad = a.data();
    for (std::size_t k = 0; k < h.size(); ++k) h[k] = ad[k].real();
    reduce_to_hessenberg(h, n);
    std::vector<cplx> out(h.begin(), h.end());
    return ComplexMatrix(n, n, std::move(out));
  }
  std::vector<cplx> h(a.data().begin(), a.data().end());
  reduce_to_hessenberg(h, n);
  return ComplexMatrix(n, n, std::move(h));
}

}  // namespace

LogDet lu_log_abs_det(const ComplexMatrix& a, cplx shift) {
  require_square(a, "lu_log_abs_det");
  const std::size_t n = a.rows();
  ComplexMatrix lu = a;
  for (std::size_t i = 0; i < n; ++i) lu(i, i) -= shift;

  LogDet out;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::norm(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::norm(lu(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) {
      out.log_abs = -std::numeric_limits<double>::infinity();
      out.is_singular = true;
      out.phase = 1.0;
      return out;
    }
    if (p != k) {
      std::swap_ranges(lu.row(k) + k, lu.row(k) + n, lu.row(p) + k);
      out.phase = -out.phase;
    }
    const cplx pivot = lu(k, k);
    const double pabs = std::abs(pivot);
    out.log_abs += std::log(pabs);
    out.phase = mul(out.phase, pivot / pabs);
    const cplx inv = 1.0 / pivot;
    const cplx* rk = lu.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx* ri = lu.row(i);
      if (ri[k] == cplx{}) continue;
      const cplx l = mul(ri[k], inv);
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= mul(l, rk[j]);
    }
  }
  const double pabs = std::abs(out.phase);
  if (pabs > 0.0) out.phase /= pabs;
  return out;
}

ComplexMatrix balance(const ComplexMatrix& a) {
  require_square(a, "balance");
  const std::size_t n = a.rows();
  ComplexMatrix b = a;
  constexpr double radix = 2.0;
  constexpr double radix2 = radix * radix;
  bool done = false;
  int passes = 0;
  while (!done && passes < 100) {
    done = true;
    ++passes;
    for (std::size_t i = 0; i < n; ++i) {
      double col = 0.0;
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        col += abs1(b(j, i));
        row += abs1(b(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      double g = row / radix;
      double f = 1.0;
      const double s = col + row;
      while (col < g) {
        f *= radix;
        col *= radix2;
      }
      g = row * radix;
      while (col > g) {
        f /= radix;
        col /= radix2;
      }
      if ((col + row) / f < 0.95 * s) {
        done = false;
        const double finv = 1.0 / f;
        cplx* ri = b.row(i);
        for (std::size_t j = 0; j < n; ++j) ri[j] *= finv;
        for (std::size_t j = 0; j < n; ++j) b(j, i) *= f;
      }
    }
  }
  return b;
}

ComplexMatrix hessenberg(const ComplexMatrix& a) {
  require_square(a, "hessenberg");
  return hessenberg_impl(a);
}

Spectrum hessenberg_eigenvalues(ComplexMatrix h, const EigenOptions& opts) {
  require_square(h, "hessenberg_eigenvalues");
  const long n = static_cast<long>(h.rows());
  Spectrum out;
  out.eigenvalues.reserve(static_cast<std::size_t>(n));
  if (n == 0) return out;

  const long max_sweeps = static_cast<long>(opts.sweep_factor) * n;
  const double tol = opts.deflation_tol;
  auto H = [&h](long i, long j) -> cplx& {
    return h(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };

  long hi = n - 1;
  int its_here = 0;
  while (hi >= 0) {
    // Find the start of the unreduced block ending at hi.
    long lo = hi;
    while (lo > 0) {
      const double sub = abs1(H(lo, lo - 1));
      double ref = abs1(H(lo - 1, lo - 1)) + abs1(H(lo, lo));
      if (ref == 0.0) {
        if (lo + 1 <= hi) ref += abs1(H(lo + 1, lo));
        if (lo - 2 >= 0) ref += abs1(H(lo - 1, lo - 2));
      }
      if (sub <= tol * ref) {
        H(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      out.eigenvalues.push_back(H(hi, hi));
      --hi;
      its_here = 0;
      continue;
    }
    if (out.iterations >= max_sweeps) {
      out.converged = false;
      return out;
    }

    cplx shift;
    if (its_here > 0 && its_here % 10 == 0) {
      // Exceptional shift to break cycling.
      shift = H(hi, hi) + 0.75 * std::abs(H(hi, hi - 1).real()) +
              cplx{0.0, 0.75 * std::abs(H(hi, hi - 1).imag())};
    } else {
      const cplx a = H(hi - 1, hi - 1);
      const cplx b = H(hi - 1, hi);
      const cplx c = H(hi, hi - 1);
      const cplx d = H(hi, hi);
      const cplx half = 0.5 * (a - d);
      const cplx disc = std::sqrt(half * half + b * c);
      const cplx mu1 = d + half + disc;  // (a+d)/2 + disc
      const cplx mu2 = d + half - disc;
      shift = std::abs(mu1 - d) <= std::abs(mu2 - d) ? mu1 : mu2;
    }

    // Implicit single-shift QR sweep on the window [lo, hi].
    cplx x = H(lo, lo) - shift;
    cplx y = H(lo + 1, lo);
    for (long k = lo; k < hi; ++k) {
      if (k > lo) {
        x = H(k, k - 1);
        y = H(k + 1, k - 1);
      }
      const double ax = std::abs(x);
      const double r = std::hypot(ax, std::abs(y));
      double c = 1.0;
      cplx s = 0.0;
      if (r != 0.0) {
        if (ax == 0.0) {
          c = 0.0;
          s = std::conj(y) / std::abs(y);
        } else {
          c = ax / r;
          s = mul(x / ax, std::conj(y)) / r;
        }
      }
      const cplx sc = std::conj(s);
      // Rows k, k+1 <- G * rows.
      const long jstart = k > lo ? k - 1 : lo;
      cplx* rk = h.row(static_cast<std::size_t>(k));
      cplx* rk1 = h.row(static_cast<std::size_t>(k + 1));
      for (long j = jstart; j <= hi; ++j) {
        const cplx p = rk[j];
        const cplx q = rk1[j];
        rk[j] = c * p + mul(s, q);
        rk1[j] = c * q - mul(sc, p);
      }
      if (k > lo) H(k + 1, k - 1) = 0.0;
      // Columns k, k+1 <- columns * G^H.
      const long iend = std::min(k + 2, hi);
      for (long i = lo; i <= iend; ++i) {
        cplx* ri = h.row(static_cast<std::size_t>(i));
        const cplx p = ri[k];
        const cplx q = ri[k + 1];
        ri[k] = c * p + mul(sc, q);
        ri[k + 1] = c * q - mul(s, p);
      }
    }
    ++out.iterations;
    ++its_here;
  }
  return out;
}

Spectrum eigenvalues(const ComplexMatrix& a, const EigenOptions& opts) {
  require_square(a, "eigenvalues");
  if (!a.all_finite()) throw std::invalid_argument("eigenvalues: non-finite entry");
  if (a.rows() == 0) return {};
  const ComplexMatrix start = opts.balance ? balance(a) : a;
  return hessenberg_eigenvalues(hessenberg_impl(start), opts);
}

double op_norm_estimate(const ComplexMatrix& a, int iters, std::uint64_t seed) {
  require_square(a, "op_norm_estimate");
  if (iters < 1) throw std::invalid_argument("op_norm_estimate: iters must be >= 1");
  const std::size_t n = a.rows();
  if (n == 0) return 0.0;
  Rng rng(seed);
  std::vector<cplx> x(n);
  for (auto& v : x) v = {rng.normal(), rng.normal()};
  auto norm2 = [](const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& e : v) s += std::norm(e);
    return std::sqrt(s);
  };
  double best = 0.0;
  std::vector<cplx> y(n);
  for (int it = 0; it < iters; ++it) {
    const double xn = norm2(x);
    if (xn == 0.0) break;
    for (auto& v : x) v /= xn;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx* ai = a.row(i);
      cplx s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += mul(ai[j], x[j]);
      y[i] = s;
    }
    best = std::max(best, norm2(y) / norm2(x));
    std::fill(x.begin(), x.end(), cplx{});
    for (std::size_t i = 0; i < n; ++i) {
      const cplx* ai = a.row(i);
      const cplx yi = y[i];
      for (std::size_t j = 0; j < n; ++j) x[j] += mul_conj(ai[j], yi);
    }
  }
  return best;
}

}  // namespace specrings
