#include "specrings/limitlaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "specrings/rng.hpp"

namespace specrings {

double LimitMeasure::total_weight() const {
  double w = 0.0;
  for (const auto& c : components) w += c.weight;
  return w;
}

double LimitMeasure::max_radius() const {
  double r = 0.0;
  for (const auto& c : components) r = std::max(r, c.radius);
  return r;
}

bool LimitMeasure::is_concentric(cplx center) const {
  return std::all_of(components.begin(), components.end(),
                     [center](const CircleComponent& c) { return c.center == center; });
}

double radius(int dim, int n, double gamma) {
  if (dim < 1) throw std::invalid_argument("radius: dim must be >= 1");
  if (n < 2) throw std::invalid_argument("radius: N must be >= 2");
  return std::exp(-(gamma - 0.5) * std::log(static_cast<double>(n)) / dim);
}

LimitMeasure limit_measure(const ModelSpec& spec) {
  spec.validate();
  const int n = spec.n();
  LimitMeasure m;
  for (const auto& b : spec.blocks) {
    const double r = radius(b.dim, n, spec.gamma);
    const double w = static_cast<double>(b.dim) / n;
    auto it = std::find_if(m.components.begin(), m.components.end(),
                           [&](const CircleComponent& c) { return c.center == b.center && c.radius == r; });
    if (it != m.components.end()) {
      it->weight += w;
    } else {
      m.components.push_back({b.center, r, w});
    }
  }
  if (std::abs(m.total_weight() - 1.0) > 1e-12) {
    throw std::logic_error("limit_measure: weights do not sum to one");
  }
  return m;
}

double g_value(const BlockSpec& block, int n, double gamma, cplx z) {
  const double dist = std::abs(z - block.center);
  if (dist == 0.0) return std::numeric_limits<double>::infinity();
  const double a = block.dim / std::log(static_cast<double>(n));
  return -(gamma - 0.5) - a * std::log(dist);
}

PotentialValue potential_limit(const ModelSpec& spec, cplx z) {
  spec.validate();
  const int n = spec.n();
  const double log_n = std::log(static_cast<double>(n));
  const double nu = spec.nu();
  double inside = 0.0;
  double outside = 0.0;
  for (const auto& b : spec.blocks) {
    if (g_value(b, n, spec.gamma, z) <= 0.0) {
      outside += (b.dim / log_n) * std::log(std::abs(z - b.center));
    } else {
      inside += nu;
    }
  }
  const double value = (log_n / n) * (outside - inside);
  return {value, std::isfinite(value)};
}

double potential_of_measure(const LimitMeasure& measure, cplx z) {
  double u = 0.0;
  for (const auto& c : measure.components) {
    u += c.weight * std::log(std::max(std::abs(z - c.center), c.radius));
  }
  return u;
}

double default_eps_prime(double gamma) { return std::min(0.1, (2.0 * gamma - 1.0) / 2.0); }

bool in_V_N(const ModelSpec& spec, cplx z, double eps_prime) {
  spec.validate();
  if (!(eps_prime > 0.0 && eps_prime < 2.0 * spec.gamma - 1.0)) {
    throw std::invalid_argument("in_V_N: eps_prime must lie in (0, 2 gamma - 1)");
  }
  const double n = spec.n();
  const double bound = std::pow(n, 2.0 * spec.gamma - 1.0 - eps_prime);
  for (const auto& b : spec.blocks) {
    const double d = std::abs(z - b.center);
    const double gap = std::abs(1.0 - d * d);
    const double second = gap == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / gap;
    if (!(std::min(static_cast<double>(b.dim), second) < bound)) return false;
  }
  return true;
}

double predicted_modulus_cdf(const LimitMeasure& measure, cplx center, double r) {
  if (!measure.is_concentric(center)) {
    throw std::invalid_argument("predicted_modulus_cdf: measure is not concentric at the given center");
  }
  double f = 0.0;
  for (const auto& c : measure.components)
    if (c.radius <= r) f += c.weight;
  return std::min(f, 1.0);
}

std::vector<cplx> sample_limit(const LimitMeasure& measure, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_limit: n must be >= 1");
  if (measure.components.empty()) throw std::invalid_argument("sample_limit: empty measure");
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& c : measure.components) cumulative.push_back(acc += c.weight);
  Rng rng(seed);
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    const auto& c = measure.components[static_cast<std::size_t>(it - cumulative.begin())];
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    out.push_back(c.center + std::polar(c.radius, theta));
  }
  return out;
}

}  // namespace specrings
