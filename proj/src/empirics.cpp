#include "specrings/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "specrings/parallel.hpp"

namespace specrings {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kAtomTieTol = 1e-12;

struct CdfPoint {
  double r;
  double emp_left, emp;
  double pred_left, pred;
};

// Both radial CDFs at every jump point of either one.
std::vector<CdfPoint> radial_cdf_points(const Spectrum& spectrum, cplx center,
                                        const LimitMeasure& measure) {
  if (!measure.is_concentric(center)) {
    throw std::invalid_argument("radial CDF: measure is not concentric at the given center");
  }
  if (spectrum.eigenvalues.empty()) throw std::invalid_argument("radial CDF: empty spectrum");
  auto comps = measure.components;
  std::sort(comps.begin(), comps.end(),
            [](const CircleComponent& a, const CircleComponent& b) { return a.radius < b.radius; });

  // A point placed exactly on a circle has a modulus that can land an ulp on
  // either side of the radius; such ties are snapped onto the atom.
  std::vector<double> moduli;
  moduli.reserve(spectrum.eigenvalues.size());
  for (const auto& l : spectrum.eigenvalues) {
    double m = std::abs(l - center);
    for (const auto& c : comps) {
      if (std::abs(m - c.radius) <= kAtomTieTol * c.radius) m = c.radius;
    }
    moduli.push_back(m);
  }
  std::sort(moduli.begin(), moduli.end());

  std::vector<double> jumps = moduli;
  for (const auto& c : comps) jumps.push_back(c.radius);
  std::sort(jumps.begin(), jumps.end());
  jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());

  const double n = static_cast<double>(moduli.size());
  std::vector<CdfPoint> out;
  out.reserve(jumps.size());
  std::size_t below = 0;  // moduli < t
  std::size_t upto = 0;   // moduli <= t
  std::size_t cb = 0;
  std::size_t cu = 0;
  double wb = 0.0;  // weight with radius < t
  double wu = 0.0;  // weight with radius <= t
  for (double t : jumps) {
    while (below < moduli.size() && moduli[below] < t) ++below;
    while (upto < moduli.size() && moduli[upto] <= t) ++upto;
    while (cb < comps.size() && comps[cb].radius < t) wb += comps[cb++].weight;
    while (cu < comps.size() && comps[cu].radius <= t) wu += comps[cu++].weight;
    out.push_back({t, below / n, upto / n, std::min(wb, 1.0), std::min(wu, 1.0)});
  }
  return out;
}

void write_double(std::ostream& os, double v) {
  if (std::isinf(v)) {
    os << (v < 0 ? "-inf" : "inf");
  } else {
    os << v;
  }
}

}  // namespace

void GridSpec::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max)) throw std::invalid_argument("grid: empty extent");
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid: nx and ny must be positive");
  if (size() > 1000000) throw std::invalid_argument("grid: more than 10^6 points");
}

cplx GridSpec::point(int ix, int iy) const {
  return {re_min + (ix + 0.5) * (re_max - re_min) / nx, im_min + (iy + 0.5) * (im_max - im_min) / ny};
}

GridSpec GridSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 6) throw std::invalid_argument("grid: expected re0,re1,im0,im1,nx,ny");
  GridSpec g;
  try {
    std::size_t used = 0;
    auto num = [&](const std::string& s) {
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    };
    auto integer = [&](const std::string& s) {
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    };
    g.re_min = num(parts[0]);
    g.re_max = num(parts[1]);
    g.im_min = num(parts[2]);
    g.im_max = num(parts[3]);
    g.nx = integer(parts[4]);
    g.ny = integer(parts[5]);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("grid: could not parse '" + text + "'");
  }
  g.validate();
  return g;
}

std::string GridSpec::to_string() const {
  std::ostringstream os;
  os << std::setprecision(17) << re_min << ',' << re_max << ',' << im_min << ',' << im_max << ','
     << nx << ',' << ny;
  return os.str();
}

double empirical_potential_lu(const ComplexMatrix& m_pert, cplx z) {
  if (!m_pert.is_square() || m_pert.rows() == 0) {
    throw std::invalid_argument("empirical_potential_lu: matrix must be square and non-empty");
  }
  const LogDet ld = lu_log_abs_det(m_pert, z);
  if (ld.is_singular) return kNegInf;
  return ld.log_abs / static_cast<double>(m_pert.rows());
}

double empirical_potential_eigs(const Spectrum& spectrum, cplx z, double min_distance) {
  if (!spectrum.converged) throw std::invalid_argument("empirical_potential_eigs: spectrum not converged");
  if (spectrum.eigenvalues.empty()) throw std::invalid_argument("empirical_potential_eigs: empty spectrum");
  const double floor = min_distance >= 0.0
                           ? min_distance
                           : std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z));
  double s = 0.0;
  for (const auto& l : spectrum.eigenvalues) {
    const double d = std::abs(l - z);
    if (d <= floor) return kNegInf;
    s += std::log(d);
  }
  return s / static_cast<double>(spectrum.eigenvalues.size());
}

double modulus_kolmogorov(const Spectrum& spectrum, cplx center, const LimitMeasure& measure) {
  double best = 0.0;
  for (const auto& p : radial_cdf_points(spectrum, center, measure)) {
    best = std::max({best, std::abs(p.emp - p.pred), std::abs(p.emp_left - p.pred_left)});
  }
  return best;
}

double annulus_coverage(const Spectrum& spectrum, const LimitMeasure& measure, double tol) {
  if (spectrum.eigenvalues.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& l : spectrum.eigenvalues) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : measure.components) best = std::min(best, std::abs(std::abs(l - c.center) - c.radius));
    if (best <= tol) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(spectrum.eigenvalues.size());
}

double mean_center_distance(const Spectrum& spectrum, const LimitMeasure& measure) {
  if (spectrum.eigenvalues.empty()) return 0.0;
  double total = 0.0;
  for (const auto& l : spectrum.eigenvalues) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : measure.components) best = std::min(best, std::abs(l - c.center));
    total += best;
  }
  return total / static_cast<double>(spectrum.eigenvalues.size());
}

GridComparison potential_grid_compare(const ModelSpec& spec, const GridSpec& grid, double eps_prime,
                                      std::uint64_t seed, const GridOptions& opts) {
  ModelSpec seeded = spec;
  seeded.seed = seed;
  const ComplexMatrix m = perturbed_matrix(seeded);
  return potential_grid_compare(seeded, m, nullptr, grid, eps_prime, opts);
}

GridComparison potential_grid_compare(const ModelSpec& spec, const ComplexMatrix& m_pert,
                                      const Spectrum* spectrum, const GridSpec& grid,
                                      double eps_prime, const GridOptions& opts) {
  grid.validate();
  spec.validate();
  if (m_pert.rows() != static_cast<std::size_t>(spec.n()) || !m_pert.is_square()) {
    throw std::invalid_argument("potential_grid_compare: matrix does not match the model size");
  }
  const LimitMeasure measure = limit_measure(spec);

  GridComparison out;
  PotentialRoute route = opts.route;
  if (route == PotentialRoute::automatic) {
    route = grid.size() > 100 || spectrum != nullptr ? PotentialRoute::eigenvalues : PotentialRoute::lu;
  }
  out.report.route_used = route;
  if (route == PotentialRoute::eigenvalues || spectrum != nullptr) {
    out.spectrum = spectrum != nullptr ? *spectrum : eigenvalues(m_pert);
    if (!out.spectrum.converged) throw std::runtime_error("potential_grid_compare: eigensolver did not converge");
  }

  out.rows.resize(grid.size());
  parallel_for(out.rows.size(), opts.threads, [&](std::size_t idx) {
    const int ix = static_cast<int>(idx / static_cast<std::size_t>(grid.ny));
    const int iy = static_cast<int>(idx % static_cast<std::size_t>(grid.ny));
    GridRow& row = out.rows[idx];
    row.z = grid.point(ix, iy);
    row.u_emp = route == PotentialRoute::lu
                    ? empirical_potential_lu(m_pert, row.z)
                    : empirical_potential_eigs(out.spectrum, row.z, opts.singular_radius);
    row.u_pred = potential_limit(spec, row.z).value;
    row.in_v = in_V_N(spec, row.z, eps_prime);
  });

  ComparisonReport& rep = out.report;
  double total = 0.0;
  for (auto& row : out.rows) {
    if (!row.in_v) continue;
    ++rep.n_grid_in_V;
    bool banded = false;
    for (const auto& c : measure.components) {
      if (std::abs(std::abs(row.z - c.center) - c.radius) < opts.exclude_band) banded = true;
    }
    if (banded) {
      ++rep.n_banded;
      row.excluded = true;
      continue;
    }
    if (!std::isfinite(row.u_emp)) {
      ++rep.n_singular;
      row.excluded = true;
      continue;
    }
    ++rep.n_aggregated;
    total += std::abs(row.u_emp - row.u_pred);
  }
  rep.empty_aggregation = rep.n_aggregated == 0;
  rep.potential_l1 = rep.empty_aggregation ? 0.0 : total / rep.n_aggregated;

  if (!out.spectrum.eigenvalues.empty()) {
    rep.has_spectrum = true;
    rep.annulus_coverage = annulus_coverage(out.spectrum, measure, 0.12);
    const cplx c0 = measure.components.front().center;
    if (measure.is_concentric(c0)) {
      rep.has_kolmogorov = true;
      rep.kolmogorov = modulus_kolmogorov(out.spectrum, c0, measure);
    }
  }
  return out;
}

void write_eigenvalues_csv(std::ostream& os, const std::vector<cplx>& points) {
  os << "re,im\n" << std::setprecision(17);
  for (const auto& p : points) os << p.real() << ',' << p.imag() << '\n';
}

void write_grid_csv(std::ostream& os, const std::vector<GridRow>& rows) {
  os << "z_re,z_im,u_emp,u_pred,in_v\n" << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.z.real() << ',' << r.z.imag() << ',';
    write_double(os, r.u_emp);
    os << ',';
    write_double(os, r.u_pred);
    os << ',' << (r.in_v ? 1 : 0) << '\n';
  }
}

void write_radial_cdf_csv(std::ostream& os, const Spectrum& spectrum, cplx center,
                          const LimitMeasure& measure) {
  os << "r,f_emp,f_pred\n" << std::setprecision(17);
  for (const auto& p : radial_cdf_points(spectrum, center, measure)) {
    os << p.r << ',' << p.emp << ',' << p.pred << '\n';
  }
}

std::string to_string(PotentialRoute route) {
  switch (route) {
    case PotentialRoute::automatic: return "auto";
    case PotentialRoute::lu: return "lu";
    case PotentialRoute::eigenvalues: return "eigenvalues";
  }
  return "unknown";
}

}  // namespace specrings
