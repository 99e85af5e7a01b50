#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "specrings/denselinalg.hpp"
#include "specrings/model.hpp"
#include "specrings/rng.hpp"
#include "specrings/structdet.hpp"

using namespace specrings;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  Rng r(seed);
  ComplexMatrix a(n, n);
  for (auto& v : a.data()) v = {r.normal(), r.normal()};
  return a;
}

ComplexMatrix nilpotent(std::size_t n) {
  ComplexMatrix t(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) t(i, i + 1) = 1.0;
  return t;
}

}  // namespace

TEST_SUITE("denselinalg") {
  TEST_CASE("LU log determinant examples") {
    CHECK(lu_log_abs_det(ComplexMatrix::identity(3)).log_abs == 0.0);
    const cplx d[] = {2.0, 3.0};
    CHECK(lu_log_abs_det(ComplexMatrix::diagonal(d)).log_abs == doctest::Approx(std::log(6.0)));
    const LogDet t = lu_log_abs_det(nilpotent(3));
    CHECK(t.is_singular);
    CHECK(std::isinf(t.log_abs));
    CHECK(t.log_abs < 0);
  }

  TEST_CASE("LU determinant with phase matches Leibniz") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const ComplexMatrix a = random_matrix(5, seed);
      const cplx shift{0.3, -0.2};
      ComplexMatrix as = a;
      for (std::size_t i = 0; i < 5; ++i) as(i, i) -= shift;
      const LogDet ld = lu_log_abs_det(a, shift);
      const cplx det = std::exp(ld.log_abs) * ld.phase;
      const cplx ref = leibniz_det(as);
      CHECK(std::abs(det - ref) <= 1e-8 * std::abs(ref));
    }
  }

  TEST_CASE("Hessenberg form keeps the spectrum") {
    const ComplexMatrix a = random_matrix(5, 77);
    const ComplexMatrix h = hessenberg(a);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j + 1 < i; ++j) CHECK(h(i, j) == 0.0);
    CHECK(oracle::multiset_distance(hessenberg_eigenvalues(h).eigenvalues, oracle::eig_oracle(a)) <= 1e-8);

    ComplexMatrix u = random_matrix(4, 5);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < i; ++j) u(i, j) = 0.0;
    const ComplexMatrix hu = hessenberg(u);
    for (std::size_t i = 1; i < 4; ++i)
      for (std::size_t j = 0; j < i; ++j) CHECK(hu(i, j) == 0.0);
    CHECK(oracle::multiset_distance(hessenberg_eigenvalues(hu).eigenvalues, oracle::eig_oracle(u)) <= 1e-8);
  }

  TEST_CASE("balancing is a diagonal similarity") {
    ComplexMatrix a = random_matrix(6, 3);
    for (std::size_t j = 0; j < 6; ++j) a(0, j) *= 1e6;
    const ComplexMatrix b = balance(a);
    CHECK(b.frobenius_norm() < a.frobenius_norm());
    CHECK(oracle::multiset_distance(eigenvalues(b).eigenvalues, eigenvalues(a).eigenvalues) <= 1e-8 * 1e6);
    CHECK(std::abs(b.trace() - a.trace()) <= 1e-9 * std::abs(a.trace()));
  }

  TEST_CASE("diagonal matrix") {
    const cplx d[] = {1.0, cplx{2, 1}, -3.0};
    const Spectrum s = eigenvalues(ComplexMatrix::diagonal(d));
    CHECK(s.converged);
    CHECK(oracle::multiset_distance(s.eigenvalues, {1.0, cplx{2, 1}, -3.0}) <= 1e-10);
  }

  TEST_CASE("perturbed nilpotent block has roots of the perturbation on a circle") {
    // A = T^n + eps e_{n,1} is a weighted cyclic shift with A^n = eps I, so
    // the eigenvalues are the n-th roots of eps: modulus eps^(1/n), phases
    // 2 pi j / n. For odd n these coincide with the roots of (-1)^(n+1) eps.
    for (std::size_t n : {7u, 8u}) {
      ComplexMatrix a = nilpotent(n);
      a(n - 1, 0) = 1e-8;
      const Spectrum s = eigenvalues(a);
      REQUIRE(s.eigenvalues.size() == n);
      const double mod = std::pow(1e-8, 1.0 / static_cast<double>(n));
      std::vector<double> phases;
      for (const cplx l : s.eigenvalues) {
        CHECK(std::abs(std::abs(l) - mod) <= 1e-3);
        CHECK(std::abs(std::pow(l, static_cast<double>(n)) - 1e-8) <= 1e-12);
        double ph = std::arg(l);
        if (ph < -1e-6) ph += 2 * std::numbers::pi;
        phases.push_back(ph);
      }
      std::sort(phases.begin(), phases.end());
      for (std::size_t j = 0; j < n; ++j)
        CHECK(std::abs(phases[j] - 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n)) <= 1e-3);
    }
  }

  TEST_CASE("random 6x6 against the characteristic polynomial oracle") {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
      const ComplexMatrix a = random_matrix(6, seed);
      CHECK(oracle::multiset_distance(eigenvalues(a).eigenvalues, oracle::eig_oracle(a)) <= 1e-6);
    }
  }

  TEST_CASE("real input is handled") {
    Rng r(4);
    ComplexMatrix a(6, 6);
    for (auto& v : a.data()) v = r.normal();
    CHECK(oracle::multiset_distance(eigenvalues(a).eigenvalues, oracle::eig_oracle(a)) <= 1e-6);
  }

  TEST_CASE("permutation similarity leaves the spectrum unchanged") {
    const std::size_t n = 40;
    const ComplexMatrix a = random_matrix(n, 21);
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    Rng r(22);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(p[i], p[r.next_u64() % (i + 1)]);
    ComplexMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(p[i], p[j]) = a(i, j);
    CHECK(oracle::multiset_distance(eigenvalues(a).eigenvalues, eigenvalues(b).eigenvalues) <= 1e-8);
  }

  TEST_CASE("trace and determinant identities") {
    for (std::size_t n : {3u, 7u, 60u, 150u}) {
      const ComplexMatrix a = random_matrix(n, 1000 + n);
      const Spectrum s = eigenvalues(a);
      CHECK(s.converged);
      const cplx sum = std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), cplx{});
      CHECK(std::abs(sum - a.trace()) <= 1e-8 * a.frobenius_norm() * static_cast<double>(n));
      if (n <= 7) {
        cplx prod = 1.0;
        for (const cplx l : s.eigenvalues) prod *= l;
        const cplx ref = leibniz_det(a);
        CHECK(std::abs(prod - ref) <= 1e-6 * std::abs(ref));
      }
    }
  }

  TEST_CASE("two determinant routes agree on perturbed block matrices") {
    const ModelSpec spec = make_fig2_spec(200, 0.75, 9);
    const ComplexMatrix m = perturbed_matrix(spec);
    const Spectrum s = eigenvalues(m);
    for (const cplx z : {cplx{0.1, 0.2}, cplx{1.3, 0}, cplx{-0.5, -0.5}, cplx{0, 0.9}}) {
      double sum = 0.0;
      for (const cplx l : s.eigenvalues) sum += std::log(std::abs(l - z));
      CHECK(std::abs(lu_log_abs_det(m, z).log_abs - sum) <= 1e-6 * 200);
    }
  }

  TEST_CASE("empty and trivial inputs") {
    CHECK(eigenvalues(ComplexMatrix{{cplx{2, -1}}}).eigenvalues == std::vector<cplx>{cplx{2, -1}});
    CHECK_THROWS(eigenvalues(ComplexMatrix(2, 3)));
    CHECK_THROWS(lu_log_abs_det(ComplexMatrix(2, 3)));
  }

  TEST_CASE("operator norm estimate") {
    const cplx d[] = {3.0, 1.0};
    CHECK(op_norm_estimate(ComplexMatrix::diagonal(d), 100) == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(op_norm_estimate(ComplexMatrix::identity(7), 5) == doctest::Approx(1.0).epsilon(1e-15));
    const ComplexMatrix g = sample_noise(500, 2024, NoiseKind::real);
    const double est = op_norm_estimate(g, 200);
    CHECK(est <= 2.1 * std::sqrt(500.0));
    CHECK(est >= 1.8 * std::sqrt(500.0));
  }
}
