#include "specrings/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specrings {

SampleMoments sample_moments(std::span<const double> xs) {
  SampleMoments m;
  m.n = xs.size();
  if (xs.empty()) return m;
  // Welford
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double x : xs) {
    ++k;
    const double d = x - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (x - mean);
  }
  m.mean = mean;
  if (m.n > 1) {
    m.variance = m2 / static_cast<double>(m.n - 1);
    m.std_error = std::sqrt(m.variance / static_cast<double>(m.n));
  }
  return m;
}

double kolmogorov_q(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {
// sup over pooled points of (F_a - F_b), and of |F_a - F_b| when two_sided.
double sup_diff(std::vector<double>& a, std::vector<double>& b, bool two_sided) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ecdf comparison needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < a.size() || j < b.size()) {
    double t;
    if (j >= b.size() || (i < a.size() && a[i] <= b[j])) {
      t = a[i];
    } else {
      t = b[j];
    }
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    const double d = static_cast<double>(i) / na - static_cast<double>(j) / nb;
    best = std::max(best, two_sided ? std::abs(d) : d);
  }
  return best;
}
}  // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  KsResult r;
  r.statistic = sup_diff(a, b, true);
  const double ne = static_cast<double>(a.size()) * static_cast<double>(b.size()) /
                    static_cast<double>(a.size() + b.size());
  const double root = std::sqrt(ne);
  r.p_value = kolmogorov_q((root + 0.12 + 0.11 / root) * r.statistic);
  return r;
}

KsResult ks_uniform(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("ks_uniform: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = std::clamp(xs[i], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - x, x - static_cast<double>(i) / n});
  }
  const double root = std::sqrt(n);
  return {d, kolmogorov_q((root + 0.12 + 0.11 / root) * d)};
}

double ecdf_sup_excess(std::vector<double> a, std::vector<double> b) {
  return sup_diff(a, b, false);
}

double dkw_radius(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("dkw_radius: bad arguments");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

}  // namespace specrings
