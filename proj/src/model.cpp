#include "specrings/model.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "specrings/rng.hpp"

namespace specrings {

std::string to_string(NoiseKind kind) { return kind == NoiseKind::real ? "real" : "complex"; }

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "real") return NoiseKind::real;
  if (s == "complex") return NoiseKind::complex;
  throw std::invalid_argument("unknown noise_kind '" + s + "' (expected real|complex)");
}

int ModelSpec::n() const {
  long long total = 0;
  for (const auto& b : blocks) total += b.dim;
  return static_cast<int>(total);
}

double ModelSpec::block_scale(const BlockSpec& b) const {
  return static_cast<double>(b.dim) / std::log(static_cast<double>(n()));
}

void ModelSpec::validate() const {
  if (blocks.empty()) throw std::invalid_argument("model: at least one block required");
  long long total = 0;
  for (const auto& b : blocks) {
    if (b.dim < 1) throw std::invalid_argument("model: block dimension must be >= 1");
    if (!std::isfinite(b.center.real()) || !std::isfinite(b.center.imag())) {
      throw std::invalid_argument("model: block center must be finite");
    }
    total += b.dim;
  }
  if (total > 100000) throw std::invalid_argument("model: N too large for dense storage");
  if (!(gamma > 0.5) || !std::isfinite(gamma)) {
    throw std::invalid_argument("model: gamma must be a finite real > 1/2");
  }
}

ComplexMatrix build_jordan(const ModelSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.n());
  ComplexMatrix m(n, n);
  std::size_t offset = 0;
  for (const auto& b : spec.blocks) {
    for (int k = 0; k < b.dim; ++k) {
      const std::size_t i = offset + static_cast<std::size_t>(k);
      m(i, i) = b.center;
      if (k + 1 < b.dim) m(i, i + 1) = 1.0;
    }
    offset += static_cast<std::size_t>(b.dim);
  }
  return m;
}

ComplexMatrix sample_noise(int n, std::uint64_t seed, NoiseKind kind) {
  if (n < 1) throw std::invalid_argument("sample_noise: n must be >= 1");
  const auto size = static_cast<std::size_t>(n);
  ComplexMatrix g(size, size);
  const double complex_scale = std::sqrt(0.5);
  for (std::size_t i = 0; i < size; ++i) {
    Rng rng = Rng::substream(seed, i);
    cplx* row = g.row(i);
    for (std::size_t j = 0; j < size; ++j) {
      if (kind == NoiseKind::real) {
        row[j] = cplx{rng.normal(), 0.0};
      } else {
        const double re = rng.normal();
        const double im = rng.normal();
        row[j] = cplx{complex_scale * re, complex_scale * im};
      }
    }
  }
  return g;
}

ComplexMatrix perturb(const ComplexMatrix& m, double gamma, const ComplexMatrix& noise) {
  if (!m.is_square() || !noise.is_square() || m.rows() != noise.rows()) {
    throw std::invalid_argument("perturb: matrices must be square and of equal size");
  }
  const double scale = std::pow(static_cast<double>(m.rows()), -gamma);
  ComplexMatrix out = m;
  auto od = out.data();
  auto nd = noise.data();
  for (std::size_t k = 0; k < od.size(); ++k) od[k] += scale * nd[k];
  return out;
}

ComplexMatrix perturbed_matrix(const ModelSpec& spec) {
  const ComplexMatrix m = build_jordan(spec);
  return perturb(m, spec.gamma, sample_noise(spec.n(), spec.seed, spec.noise_kind));
}

int ceil_log(int n) { return static_cast<int>(std::ceil(std::log(static_cast<double>(n)))); }

ModelSpec make_fig1_spec(int n, double gamma, std::uint64_t seed) {
  static const std::array<cplx, 5> centers = {cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0},
                                              cplx{-0.5, -0.8}, cplx{0.5, -0.8}};
  if (n < 2 || n < 5 * ceil_log(n)) {
    throw std::invalid_argument("figure1 preset: N must be at least 5*ceil(ln N)");
  }
  const int d = ceil_log(n);
  ModelSpec spec;
  spec.gamma = gamma;
  spec.seed = seed;
  int total = 0;
  std::size_t next = 0;
  while (total + d <= n) {
    spec.blocks.push_back({centers[next % centers.size()], d});
    total += d;
    ++next;
  }
  if (total < n) spec.blocks.push_back({centers[next % centers.size()], n - total});
  spec.validate();
  return spec;
}

ModelSpec make_fig2_spec(int n, double gamma, std::uint64_t seed) {
  if (n < 2 || n < ceil_log(n)) throw std::invalid_argument("figure2 preset: N too small");
  const int d = ceil_log(n);
  ModelSpec spec;
  spec.gamma = gamma;
  spec.seed = seed;
  int total = 0;
  int size = 1;
  while (total < n) {
    const int dim = std::min(size, n - total);
    spec.blocks.push_back({cplx{0.0, 0.0}, dim});
    total += dim;
    size = size % d + 1;
  }
  spec.validate();
  return spec;
}

}  // namespace specrings
