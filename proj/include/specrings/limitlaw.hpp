#pragma once

#include <cstdint>
#include <vector>

#include "specrings/model.hpp"

namespace specrings {

// Uniform probability measure on the circle |x - center| = radius, scaled by weight.
struct CircleComponent {
  cplx center;
  double radius = 1.0;
  double weight = 1.0;
};

// Finite mixture of uniform circle measures; weights sum to one.
struct LimitMeasure {
  std::vector<CircleComponent> components;

  double total_weight() const;
  double max_radius() const;
  bool is_concentric(cplx center) const;
};

// Log potential value. `finite` is false only for the -inf sentinel.
struct PotentialValue {
  double value = 0.0;
  bool finite = true;
};

// exp(-(gamma - 1/2) ln N / dim), the circle radius of a block of size dim.
double radius(int dim, int n, double gamma);

// One circle per block (center, radius(dim, N, gamma), dim / N); blocks with
// identical center and radius are merged.
LimitMeasure limit_measure(const ModelSpec& spec);

// -nu - a ln|z - center| with a = dim / ln N; +inf when z == center.
double g_value(const BlockSpec& block, int n, double gamma, cplx z);

// (ln N / N) [sum_{g_i <= 0} a_i ln|z - c_i| - sum_{g_i > 0} nu].
PotentialValue potential_limit(const ModelSpec& spec, cplx z);

// sum_i w_i ln max(|z - c_i|, r_i). Same value as potential_limit, computed
// from the measure.
double potential_of_measure(const LimitMeasure& measure, cplx z);

// min(0.1, (2 gamma - 1) / 2).
double default_eps_prime(double gamma);

// True iff min(dim_i, |1 - |z - c_i|^2|^-1) < N^(2 gamma - 1 - eps') for every block.
bool in_V_N(const ModelSpec& spec, cplx z, double eps_prime);

// CDF of |x - center| under a measure concentric at `center`: sum of the
// weights of components with radius <= r.
double predicted_modulus_cdf(const LimitMeasure& measure, cplx center, double r);

// n iid draws: component by weight, then a uniform angle on its circle.
std::vector<cplx> sample_limit(const LimitMeasure& measure, int n, std::uint64_t seed);

}  // namespace specrings
