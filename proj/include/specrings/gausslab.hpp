#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specrings/matrix.hpp"

namespace specrings {

// Outcome of one Monte Carlo check. `asserted` is false when the check
// only reports a number (no pass/fail claim applies at these parameters).
struct McReport {
  double estimate = 0.0;
  double std_error = 0.0;
  long n_samples = 0;
  double target = 0.0;
  bool pass = true;
  bool asserted = true;
  std::string note;
};

// E chi_r^(2t) = 2^t Gamma(r/2 + t) / Gamma(r/2), for t > -r/2.
double chi_moment(double r, double t);

// n_samples draws of |det E|, E a k x k real standard Gaussian matrix. k <= 12.
std::vector<double> gauss_det_samples(int k, int n_samples, std::uint64_t seed, unsigned threads = 1);

// Same law, returned as ln|det E|; no cap on k.
std::vector<double> gauss_log_det_samples(int k, int n_samples, std::uint64_t seed,
                                          unsigned threads = 1);

// n_samples draws of prod_{r=1..k} chi_r with independent chi_r. k <= 12.
std::vector<double> goodman_samples(int k, int n_samples, std::uint64_t seed, unsigned threads = 1);

// n_samples draws of chi_r (norm of an r-dimensional standard Gaussian).
std::vector<double> chi_samples(int r, int n_samples, std::uint64_t seed);

// exp(floor(k delta)^2 ln(2 e^2 / k)); may exceed 1 for small k.
double tail_ub_bound(int k, double delta);

// Pr[|det E| >= (k!)^(1/2 + delta)] against tail_ub_bound. Asserted only
// where the bound is <= 1: estimate <= bound + 3 SE.
McReport tail_ub_check(int k, double delta, int n_samples, std::uint64_t seed, unsigned threads = 1);

// Pr[ln|det E| <= ln(n!)/2 - c1 n] for an n x n Gaussian E, n <= 40.
// Asserted (estimate <= 0.01) when c1 >= 2 and n >= 20.
McReport tail_lb_check(int n, double c1, int n_samples, std::uint64_t seed, unsigned threads = 1);

// One-sided comparison of the empirical laws of |det(E + M)| and |det E|:
// sup_t (F_shifted(t) - F_centered(t)) <= 2 sqrt(ln(2/alpha) / (2 n)).
McReport domination_check(int k, const ComplexMatrix& m, int n_samples, std::uint64_t seed,
                          double alpha = 1e-3, unsigned threads = 1);

}  // namespace specrings
