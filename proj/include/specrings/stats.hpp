#pragma once

#include <span>
#include <vector>

namespace specrings {

struct SampleMoments {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  double variance = 0.0;   // unbiased
  std::size_t n = 0;
};

SampleMoments sample_moments(std::span<const double> xs);

// Kolmogorov survival function Q(lambda) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value
// Q((sqrt(ne) + 0.12 + 0.11/sqrt(ne)) D), ne = n m / (n + m).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// One-sample test against the uniform law on [0, 1).
KsResult ks_uniform(std::vector<double> xs);

// sup_t (F_a(t) - F_b(t)) over the pooled sample points (one-sided).
double ecdf_sup_excess(std::vector<double> a, std::vector<double> b);

// Two-sided DKW radius: sqrt(ln(2/alpha) / (2 n)).
double dkw_radius(std::size_t n, double alpha);

}  // namespace specrings
