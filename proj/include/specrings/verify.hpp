#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specrings/matrix.hpp"

namespace specrings {

// One named oracle comparison or Monte Carlo assertion.
struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;      // observed error, statistic or estimate
  double threshold = 0.0;  // what `value` was compared against
  std::string detail;
};

// Closed-form minors against Leibniz determinants of explicit submatrices.
CheckResult check_jordan_minors(int max_n, const std::vector<cplx>& zs, double tol = 1e-9);
CheckResult check_bidiag_minors(int max_n, int instances, std::uint64_t seed, double tol = 1e-9);
CheckResult check_block_minors(const std::vector<cplx>& zs, int random_instances, std::uint64_t seed,
                               double tol = 1e-9);
CheckResult check_det_sum_decomposition(int pairs, int max_n, std::uint64_t seed, double tol = 1e-9);
// A = 0, B = I must expand to exactly 1 for every n <= max_n.
CheckResult check_sign_convention(int max_n);

// E|det E|^2 = k! within `z_max` standard errors.
CheckResult check_det_second_moment(int k, int samples, std::uint64_t seed, unsigned threads = 1,
                                    double z_max = 5.0);
// Two-sample KS between |det E| and prod chi_r does not reject at alpha.
CheckResult check_goodman_ks(int k, int samples, std::uint64_t seed, unsigned threads = 1,
                             double alpha = 1e-3);
// Sampled E chi_r^(2t) within `z_max` standard errors of chi_moment(r, t).
CheckResult check_chi_moment(int r, double t, int samples, std::uint64_t seed, double z_max = 5.0);
// domination_check over `instances` random (k <= max_k, M) pairs.
CheckResult check_domination(int instances, int max_k, int samples, std::uint64_t seed,
                             unsigned threads = 1);
CheckResult check_tail_ub(int k, double delta, int samples, std::uint64_t seed, unsigned threads = 1);
CheckResult check_tail_lb(int n, double c1, int samples, std::uint64_t seed, unsigned threads = 1);

struct VerifyOptions {
  int samples = 10000;  // Monte Carlo draws per check (second moments use 20x)
  std::uint64_t seed = 20140413;
  unsigned threads = 1;
};

// The full determinant-identity and Gaussian-law suite.
std::vector<CheckResult> verify_lemmas(const VerifyOptions& opts = {});

}  // namespace specrings
