#include <cmath>
#include <map>
#include <stdexcept>

#include "doctest.h"
#include "specrings/matrix.hpp"
#include "specrings/model.hpp"
#include "specrings/rng.hpp"
#include "specrings/stats.hpp"

using namespace specrings;

TEST_SUITE("rng") {
  TEST_CASE("engine matches the published mt19937_64 reference value") {
    std::mt19937_64 ref;
    ref.discard(9999);
    CHECK(ref() == 9981545732273789042ULL);
    Rng r(5489);
    std::uint64_t v = 0;
    for (int i = 0; i < 10000; ++i) v = r.next_u64();
    CHECK(v == 9981545732273789042ULL);
  }

  TEST_CASE("substreams are deterministic and distinct") {
    Rng a = Rng::substream(7, 3), b = Rng::substream(7, 3), c = Rng::substream(7, 4);
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());
  }

  TEST_CASE("uniform_open stays inside (0,1) and passes a uniformity test") {
    Rng r(11);
    std::vector<double> xs(20000);
    for (auto& x : xs) {
      x = r.uniform_open();
      REQUIRE(x > 0.0);
      REQUIRE(x < 1.0);
    }
    CHECK(ks_uniform(xs).p_value > 1e-3);
  }
}

TEST_SUITE("matrix") {
  TEST_CASE("construction rejects non-finite entries") {
    CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx{NAN, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
  }

  TEST_CASE("products and adjoint") {
    ComplexMatrix a{{1.0, cplx{0, 1}}, {2.0, 3.0}};
    ComplexMatrix b = ComplexMatrix::identity(2);
    CHECK(a * b == a);
    CHECK(a.adjoint()(0, 1) == 2.0);
    CHECK(a.adjoint()(1, 0) == cplx(0, -1));
    CHECK(a.trace() == 4.0);
    CHECK(a.frobenius_norm() == doctest::Approx(std::sqrt(15.0)));
  }
}

TEST_SUITE("model") {
  TEST_CASE("single nilpotent block") {
    ModelSpec s{{{0.0, 3}}, 1.0, 0, NoiseKind::real};
    const ComplexMatrix m = build_jordan(s);
    ComplexMatrix t(3, 3);
    t(0, 1) = 1.0;
    t(1, 2) = 1.0;
    CHECK(m == t);
  }

  TEST_CASE("one by one block") {
    ModelSpec s{{{cplx{2, 1}, 1}}, 1.0, 0, NoiseKind::real};
    CHECK(build_jordan(s) == ComplexMatrix{{cplx{2, 1}}});
  }

  TEST_CASE("two blocks are assembled block-diagonally") {
    ModelSpec s{{{1.0, 2}, {-1.0, 2}}, 1.0, 0, NoiseKind::real};
    const ComplexMatrix m = build_jordan(s);
    CHECK(m(0, 0) == 1.0);
    CHECK(m(1, 1) == 1.0);
    CHECK(m(2, 2) == -1.0);
    CHECK(m(3, 3) == -1.0);
    CHECK(m(0, 1) == 1.0);
    CHECK(m(2, 3) == 1.0);
    CHECK(m(1, 2) == 0.0);
  }

  TEST_CASE("jordan matrix is upper bidiagonal") {
    const ModelSpec s = make_fig2_spec(300, 0.75);
    const ComplexMatrix m = build_jordan(s);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0.0) CHECK((j == i || j == i + 1));
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS((ModelSpec{{}, 1.0, 0, NoiseKind::real}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ModelSpec{{{0.0, 0}}, 1.0, 0, NoiseKind::real}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ModelSpec{{{0.0, 4}}, 0.5, 0, NoiseKind::real}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ModelSpec{{{cplx{INFINITY, 0}, 4}}, 1.0, 0, NoiseKind::real}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS(noise_kind_from_string("quaternion"), std::invalid_argument);
  }

  TEST_CASE("noise is bit-identical for the same seed") {
    CHECK(sample_noise(2, 99, NoiseKind::real) == sample_noise(2, 99, NoiseKind::real));
    CHECK(sample_noise(40, 99, NoiseKind::complex) == sample_noise(40, 99, NoiseKind::complex));
    CHECK_FALSE(sample_noise(5, 1, NoiseKind::real) == sample_noise(5, 2, NoiseKind::real));
  }

  TEST_CASE("real noise has mean 0 and variance 1") {
    const ComplexMatrix g = sample_noise(1000, 4242, NoiseKind::real);
    CHECK(g.is_real());
    std::vector<double> xs, sq;
    for (const cplx v : g.data()) {
      xs.push_back(v.real());
      sq.push_back(v.real() * v.real());
    }
    const auto m = sample_moments(xs);
    CHECK(std::abs(m.mean) <= 5.0 * m.std_error);
    const auto v = sample_moments(sq);
    CHECK(std::abs(v.mean - 1.0) <= 5.0 * v.std_error);
  }

  TEST_CASE("complex noise has E|g|^2 = 1 with independent parts") {
    const ComplexMatrix g = sample_noise(400, 17, NoiseKind::complex);
    std::vector<double> re, mod2, cross;
    for (const cplx v : g.data()) {
      re.push_back(v.real());
      mod2.push_back(std::norm(v));
      cross.push_back(v.real() * v.imag());
    }
    const auto m = sample_moments(re);
    CHECK(std::abs(m.mean) <= 5.0 * m.std_error);
    const auto v = sample_moments(mod2);
    CHECK(std::abs(v.mean - 1.0) <= 5.0 * v.std_error);
    const auto c = sample_moments(cross);
    CHECK(std::abs(c.mean) <= 5.0 * c.std_error);
  }

  TEST_CASE("perturbation scaling") {
    CHECK(perturb(ComplexMatrix(1, 1), 1.0, ComplexMatrix{{3.0}}) == ComplexMatrix{{3.0}});

    const ComplexMatrix g = sample_noise(2, 3, NoiseKind::real);
    const ComplexMatrix p = perturb(ComplexMatrix::identity(2), 50.0, g);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(std::abs(p(i, j) - (i == j ? 1.0 : 0.0)) <= std::ldexp(std::abs(g(i, j)), -50) * (1 + 1e-12));

    const ComplexMatrix g100 = sample_noise(100, 8, NoiseKind::real);
    const ComplexMatrix p100 = perturb(ComplexMatrix(100, 100), 0.75, g100);
    for (std::size_t k = 0; k < 100 * 100; k += 97)
      CHECK(p100.data()[k].real() == doctest::Approx(g100.data()[k].real() * std::pow(10.0, -1.5)).epsilon(1e-14));

    const ComplexMatrix j = build_jordan(make_fig2_spec(50, 1.0));
    CHECK(perturb(j, 1.0, ComplexMatrix(50, 50)) == j);
  }

  TEST_CASE("figure 1 preset") {
    const ModelSpec s = make_fig1_spec(5000, 1.0);
    CHECK(s.n() == 5000);
    std::map<std::pair<double, double>, int> per_center;
    for (std::size_t i = 0; i + 1 < s.blocks.size(); ++i) CHECK(s.blocks[i].dim == 9);
    for (const auto& b : s.blocks) per_center[{b.center.real(), b.center.imag()}] += b.dim;
    CHECK(per_center.size() == 5);
    for (const auto& [c, total] : per_center) CHECK(std::abs(total - 1000) <= 9);
    for (int n : {50, 123, 2000, 4321}) CHECK(make_fig1_spec(n, 1.0).n() == n);
    CHECK_THROWS_AS(make_fig1_spec(10, 1.0), std::invalid_argument);
  }

  TEST_CASE("figure 2 preset") {
    const ModelSpec s = make_fig2_spec(4000, 0.75);
    CHECK(s.n() == 4000);
    std::map<int, int> counts;
    for (std::size_t i = 0; i + 1 < s.blocks.size(); ++i) {
      CHECK(s.blocks[i].dim == static_cast<int>(i % 9) + 1);
      ++counts[s.blocks[i].dim];
    }
    CHECK(counts.size() == 9);
    int lo = 1 << 30, hi = 0;
    for (const auto& [d, c] : counts) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    CHECK(hi - lo <= 1);
    for (const auto& b : s.blocks) CHECK(b.center == 0.0);

    const ModelSpec small = make_fig2_spec(10, 0.75);
    std::vector<int> dims;
    for (const auto& b : small.blocks) dims.push_back(b.dim);
    CHECK(dims == std::vector<int>{1, 2, 3, 1, 2, 1});

    for (int n : {2, 3, 77, 1000, 2000}) {
      const ModelSpec t = make_fig2_spec(n, 0.75);
      CHECK(t.n() == n);
      CHECK(t.ell() <= n);
      CHECK(t.ell() <= 2.0 * n / std::log(n) + 2);
    }
  }

  TEST_CASE("ceil_log") {
    CHECK(ceil_log(5000) == 9);
    CHECK(ceil_log(4000) == 9);
    CHECK(ceil_log(1000) == 7);
    CHECK(ceil_log(10) == 3);
  }
}
