#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "specrings/denselinalg.hpp"
#include "specrings/limitlaw.hpp"
#include "specrings/model.hpp"

namespace specrings {

// Rectangular evaluation grid; points sit at cell centers.
struct GridSpec {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;
  int nx = 10;
  int ny = 10;

  void validate() const;
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  cplx point(int ix, int iy) const;

  // "re0,re1,im0,im1,nx,ny"
  static GridSpec parse(const std::string& text);
  std::string to_string() const;
};

// (1/N) ln|det(M - zI)| via LU; -inf if exactly singular.
double empirical_potential_lu(const ComplexMatrix& m_pert, cplx z);

// (1/N) sum_j ln|lambda_j - z|; -inf if some |lambda_j - z| <= min_distance.
// The default min_distance flags coincidence to machine precision.
double empirical_potential_eigs(const Spectrum& spectrum, cplx z, double min_distance = -1.0);

// sup_r |F_emp(r) - F_pred(r)| for the moduli |lambda - center|, evaluated
// at (and just left of) every jump of either CDF.
double modulus_kolmogorov(const Spectrum& spectrum, cplx center, const LimitMeasure& measure);

// Fraction of eigenvalues within tol of some predicted circle.
double annulus_coverage(const Spectrum& spectrum, const LimitMeasure& measure, double tol);

// Mean over eigenvalues of the distance to the nearest block center.
double mean_center_distance(const Spectrum& spectrum, const LimitMeasure& measure);

enum class PotentialRoute { automatic, lu, eigenvalues };

struct GridOptions {
  // Points with | |z - c_i| - r_i | < exclude_band for some component are
  // left out of the aggregate (still listed in the table).
  double exclude_band = 0.0;
  PotentialRoute route = PotentialRoute::automatic;
  unsigned threads = 1;
  // Eigenvalue-route coincidence radius for the -inf sentinel.
  double singular_radius = 1e-6;
};

struct GridRow {
  cplx z;
  double u_emp = 0.0;
  double u_pred = 0.0;
  bool in_v = false;
  bool excluded = false;  // in the exclusion band or hit the -inf sentinel
};

struct ComparisonReport {
  double kolmogorov = 0.0;        // meaningful when has_kolmogorov
  bool has_kolmogorov = false;    // measure concentric and spectrum computed
  double annulus_coverage = 0.0;  // meaningful when has_spectrum
  bool has_spectrum = false;
  double potential_l1 = 0.0;  // mean |u_emp - u_pred| over aggregated points
  int n_grid_in_V = 0;
  int n_aggregated = 0;
  int n_singular = 0;
  int n_banded = 0;
  bool empty_aggregation = false;
  PotentialRoute route_used = PotentialRoute::lu;
};

struct GridComparison {
  ComparisonReport report;
  std::vector<GridRow> rows;  // ix-major: row index = ix * ny + iy
  Spectrum spectrum;          // empty unless the eigenvalue route ran
};

// Builds the perturbed matrix for spec (with the given seed) and compares the
// empirical and limiting log potentials on the grid. The automatic route uses
// LU for grids of at most 100 points and the spectrum otherwise.
GridComparison potential_grid_compare(const ModelSpec& spec, const GridSpec& grid, double eps_prime,
                                      std::uint64_t seed, const GridOptions& opts = {});

// As above with a precomputed perturbed matrix and, optionally, its spectrum.
GridComparison potential_grid_compare(const ModelSpec& spec, const ComplexMatrix& m_pert,
                                      const Spectrum* spectrum, const GridSpec& grid,
                                      double eps_prime, const GridOptions& opts = {});

// CSV emitters; headers are fixed.
void write_eigenvalues_csv(std::ostream& os, const std::vector<cplx>& points);
void write_grid_csv(std::ostream& os, const std::vector<GridRow>& rows);
void write_radial_cdf_csv(std::ostream& os, const Spectrum& spectrum, cplx center,
                          const LimitMeasure& measure);

std::string to_string(PotentialRoute route);

}  // namespace specrings
