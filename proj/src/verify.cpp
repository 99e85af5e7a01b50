#include "specrings/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specrings/gausslab.hpp"
#include "specrings/rng.hpp"
#include "specrings/stats.hpp"
#include "specrings/structdet.hpp"

namespace specrings {

namespace {

ComplexMatrix jordan_unit(cplx z, int n) {
  ComplexMatrix u = ComplexMatrix::identity(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) u(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)) = z;
  return u;
}

ComplexMatrix random_complex(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix a(rows, cols);
  for (auto& v : a.data()) v = {rng.normal(), rng.normal()};
  return a;
}

// Visits every (X, Y) with |X| = |Y| over [n].
template <typename Fn>
void for_each_index_pair(int n, Fn fn) {
  for (int k = 0; k <= n; ++k) {
    const auto sets = subsets_of_size(n, k);
    for (const auto& x : sets)
      for (const auto& y : sets) fn(x, y);
  }
}

std::string describe(double value, double threshold) {
  std::ostringstream os;
  os << "value=" << value << " threshold=" << threshold;
  return os.str();
}

CheckResult mean_check(std::string name, const std::vector<double>& xs, double target, double z_max) {
  const SampleMoments m = sample_moments(xs);
  CheckResult r;
  r.name = std::move(name);
  r.value = m.std_error > 0 ? std::abs(m.mean - target) / m.std_error : std::abs(m.mean - target);
  r.threshold = z_max;
  r.pass = r.value <= z_max;
  std::ostringstream os;
  os << "mean=" << m.mean << " target=" << target << " se=" << m.std_error << " z=" << r.value;
  r.detail = os.str();
  return r;
}

}  // namespace

CheckResult check_jordan_minors(int max_n, const std::vector<cplx>& zs, double tol) {
  double worst = 0.0;
  long cases = 0;
  for (int n = 1; n <= max_n; ++n) {
    for (const cplx z : zs) {
      const ComplexMatrix u = jordan_unit(z, n);
      for_each_index_pair(n, [&](const IndexSet& x, const IndexSet& y) {
        const cplx closed = jordan_minor_det(z, n, x, y);
        const cplx brute = leibniz_det(complement_submatrix(u, x, y));
        worst = std::max(worst, std::abs(closed - brute));
        ++cases;
      });
    }
  }
  return {"jordan_minor_det_vs_leibniz", worst <= tol, worst, tol,
          describe(worst, tol) + " cases=" + std::to_string(cases)};
}

CheckResult check_bidiag_minors(int max_n, int instances, std::uint64_t seed, double tol) {
  double worst = 0.0;
  long cases = 0;
  Rng rng(seed);
  for (int n = 1; n <= max_n; ++n) {
    for (int inst = 0; inst < instances; ++inst) {
      ComplexMatrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        a(ui, ui) = {rng.normal(), rng.normal()};
        // Some superdiagonal zeros make the matrix block-structured.
        if (i + 1 < n && rng.uniform() < 0.75) a(ui, ui + 1) = {rng.normal(), rng.normal()};
      }
      for_each_index_pair(n, [&](const IndexSet& x, const IndexSet& y) {
        const cplx closed = bidiag_minor_det(a, x, y);
        const cplx brute = leibniz_det(submatrix(a, x, y));
        worst = std::max(worst, std::abs(closed - brute));
        ++cases;
      });
    }
  }
  return {"bidiag_minor_det_vs_leibniz", worst <= tol, worst, tol,
          describe(worst, tol) + " cases=" + std::to_string(cases)};
}

CheckResult check_block_minors(const std::vector<cplx>& zs, int random_instances, std::uint64_t seed,
                               double tol) {
  std::vector<std::vector<ComplexMatrix>> families;
  for (const cplx z : zs) families.push_back({jordan_unit(z, 2), jordan_unit(z, 3), jordan_unit(z, 1)});
  Rng rng(seed);
  for (int i = 0; i < random_instances; ++i) {
    families.push_back({random_complex(3, 3, rng), random_complex(3, 3, rng)});
    families.push_back({random_complex(1, 1, rng), random_complex(2, 2, rng), random_complex(3, 3, rng)});
  }
  double worst = 0.0;
  long cases = 0;
  for (const auto& blocks : families) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    ComplexMatrix full(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) full(off + i, off + j) = b(i, j);
      off += b.rows();
    }
    for_each_index_pair(static_cast<int>(n), [&](const IndexSet& x, const IndexSet& y) {
      const cplx closed = block_minor_det(blocks, x, y);
      const cplx brute = leibniz_det(submatrix(full, x, y));
      worst = std::max(worst, std::abs(closed - brute));
      ++cases;
    });
  }
  return {"block_minor_det_vs_leibniz", worst <= tol, worst, tol,
          describe(worst, tol) + " cases=" + std::to_string(cases)};
}

CheckResult check_det_sum_decomposition(int pairs, int max_n, std::uint64_t seed, double tol) {
  Rng rng(seed);
  double worst = 0.0;
  for (int p = 0; p < pairs; ++p) {
    const auto n = static_cast<std::size_t>(2 + p % (max_n - 1));
    const ComplexMatrix a = random_complex(n, n, rng);
    const ComplexMatrix b = random_complex(n, n, rng);
    worst = std::max(worst, std::abs(det_sum_decomposition(a, b) - leibniz_det(a + b)));
  }
  return {"det_sum_decomposition_vs_leibniz", worst <= tol, worst, tol,
          describe(worst, tol) + " pairs=" + std::to_string(pairs)};
}

CheckResult check_sign_convention(int max_n) {
  double worst = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto size = static_cast<std::size_t>(n);
    worst = std::max(worst, std::abs(det_sum_decomposition(ComplexMatrix::zeros(size),
                                                           ComplexMatrix::identity(size)) - 1.0));
  }
  return {"det_sum_sign_convention", worst == 0.0, worst, 0.0, describe(worst, 0.0)};
}

CheckResult check_det_second_moment(int k, int samples, std::uint64_t seed, unsigned threads,
                                    double z_max) {
  auto xs = gauss_det_samples(k, samples, seed, threads);
  for (auto& x : xs) x *= x;
  return mean_check("det_second_moment_k" + std::to_string(k), xs, std::tgamma(k + 1.0), z_max);
}

CheckResult check_goodman_ks(int k, int samples, std::uint64_t seed, unsigned threads, double alpha) {
  auto det = gauss_det_samples(k, samples, seed, threads);
  auto chi = goodman_samples(k, samples, splitmix64(seed + 1), threads);
  const KsResult ks = ks_two_sample(std::move(det), std::move(chi));
  std::ostringstream os;
  os << "D=" << ks.statistic << " p=" << ks.p_value << " alpha=" << alpha;
  return {"goodman_identity_ks_k" + std::to_string(k), ks.p_value > alpha, ks.p_value, alpha, os.str()};
}

CheckResult check_chi_moment(int r, double t, int samples, std::uint64_t seed, double z_max) {
  auto xs = chi_samples(r, samples, seed);
  for (auto& x : xs) x = std::pow(x, 2.0 * t);
  std::ostringstream name;
  name << "chi_moment_r" << r << "_t" << t;
  return mean_check(name.str(), xs, chi_moment(r, t), z_max);
}

CheckResult check_domination(int instances, int max_k, int samples, std::uint64_t seed, unsigned threads) {
  Rng rng(seed);
  static const double scales[] = {0.0, 0.3, 1.0, 3.0, 10.0};
  double worst_ratio = 0.0;
  int failures = 0;
  std::ostringstream os;
  for (int i = 0; i < instances; ++i) {
    const int k = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_k));
    const double scale = scales[rng.next_u64() % 5];
    ComplexMatrix m(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
    for (auto& v : m.data()) v = scale * rng.normal();
    const McReport rep = domination_check(k, m, samples, splitmix64(seed + 100 + static_cast<std::uint64_t>(i)),
                                          1e-3, threads);
    worst_ratio = std::max(worst_ratio, rep.estimate / rep.target);
    if (!rep.pass) {
      ++failures;
      os << "[k=" << k << " scale=" << scale << " sup=" << rep.estimate << " margin=" << rep.target << "] ";
    }
  }
  os << "instances=" << instances << " failures=" << failures << " worst sup/margin=" << worst_ratio;
  return {"stochastic_domination", failures == 0, worst_ratio, 1.0, os.str()};
}

CheckResult check_tail_ub(int k, double delta, int samples, std::uint64_t seed, unsigned threads) {
  const McReport rep = tail_ub_check(k, delta, samples, seed, threads);
  std::ostringstream os;
  os << "estimate=" << rep.estimate << " se=" << rep.std_error << " bound=" << rep.target;
  if (!rep.note.empty()) os << " (" << rep.note << ")";
  return {"gaussian_det_upper_tail_k" + std::to_string(k), rep.pass, rep.estimate,
          rep.target + 3.0 * rep.std_error, os.str()};
}

CheckResult check_tail_lb(int n, double c1, int samples, std::uint64_t seed, unsigned threads) {
  const McReport rep = tail_lb_check(n, c1, samples, seed, threads);
  std::ostringstream os;
  os << "estimate=" << rep.estimate << " se=" << rep.std_error << " limit=" << rep.target;
  if (!rep.note.empty()) os << " (" << rep.note << ")";
  return {"gaussian_det_lower_tail_n" + std::to_string(n), rep.pass, rep.estimate, rep.target, os.str()};
}

std::vector<CheckResult> verify_lemmas(const VerifyOptions& opts) {
  const std::vector<cplx> zs = {0.0, 0.5, 1.0, cplx{-0.3, 0.4}};
  std::vector<CheckResult> out;
  out.push_back(check_jordan_minors(6, zs));
  out.push_back(check_bidiag_minors(6, 3, opts.seed));
  out.push_back(check_block_minors(zs, 3, opts.seed + 1));
  out.push_back(check_det_sum_decomposition(200, 4, opts.seed + 2));
  out.push_back(check_sign_convention(5));
  for (int k = 1; k <= 6; ++k) {
    out.push_back(check_det_second_moment(k, 20 * opts.samples, opts.seed + 10 + static_cast<std::uint64_t>(k),
                                          opts.threads));
  }
  for (int k = 1; k <= 5; ++k) {
    out.push_back(check_goodman_ks(k, opts.samples, opts.seed + 20 + static_cast<std::uint64_t>(k), opts.threads));
  }
  for (int r = 1; r <= 6; ++r) {
    for (double t : {1.0, 2.0}) {
      out.push_back(check_chi_moment(r, t, opts.samples, opts.seed + 30 + static_cast<std::uint64_t>(10 * r + t)));
    }
  }
  out.push_back(check_domination(20, 6, opts.samples, opts.seed + 3, opts.threads));
  out.push_back(check_tail_ub(20, 0.5, opts.samples, opts.seed + 4, opts.threads));
  out.push_back(check_tail_lb(20, 2.0, opts.samples, opts.seed + 5, opts.threads));
  return out;
}

}  // namespace specrings
