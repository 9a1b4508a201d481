#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bogospec/domain.hpp"

using namespace bogospec;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("torus grid: n=8 gives h=1/8 with uniform periodic weights") {
  auto g = make_torus_grid(8);
  CHECK(g.h == 1.0 / 8);
  for (int i = 0; i < g.n; ++i) CHECK(g.weights(i) == 1.0 / 8);
  CHECK(g.weights.sum() == 1.0);
}

TEST_CASE("box grid: L=8 n=256 gives h=1/16 and weights summing to 2L") {
  auto g = make_box_grid(8.0, 256);
  CHECK(g.h == 1.0 / 16);
  CHECK(g.weights.sum() == 16.0);
  CHECK(g.x(0) == doctest::Approx(-8.0 + 0.5 / 16).epsilon(1e-15));
  CHECK(g.x(255) == doctest::Approx(8.0 - 0.5 / 16).epsilon(1e-15));
}

TEST_CASE("mode basis: d=1 K=2 enumerates {-4pi,...,4pi} lexicographically") {
  auto b = make_mode_basis(1, 2);
  REQUIRE(b.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(b.momentum(i)[0] == doctest::Approx((i - 2) * kTwoPi));
  int zeros = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.indices[i] == std::array<int, 3>{0, 0, 0}) ++zeros;
  CHECK(zeros == 1);
  // closed under negation
  for (const auto& k : b.indices) {
    std::array<int, 3> neg = {-k[0], -k[1], -k[2]};
    bool found = false;
    for (const auto& k2 : b.indices) found |= (k2 == neg);
    CHECK(found);
  }
}

TEST_CASE("discretization factories reject invalid sizes") {
  CHECK_THROWS_AS(make_torus_grid(7), std::invalid_argument);
  CHECK_THROWS_AS(make_box_grid(8.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_box_grid(0.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(make_box_grid(-1.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(make_mode_basis(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_mode_basis(4, 2), std::invalid_argument);
}

TEST_CASE("cosine fourier coefficients: g at p=0, g/2 at 2pi, 0 at 4pi") {
  auto v = make_cosine_interaction(3.0);
  CHECK(fourier_coefficient(v, 0.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(fourier_coefficient(v, kTwoPi) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(fourier_coefficient(v, -kTwoPi) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(fourier_coefficient(v, 2 * kTwoPi) == 0.0);
}

TEST_CASE("fourier coefficient equals quadrature DFT for band-limited kinds") {
  auto grid = make_torus_grid(16);  // n >= 4K+4 with K = 1
  auto v = make_cosine_interaction(2.5);
  for (int k = -2; k <= 2; ++k) {
    double p = k * kTwoPi;
    double dft = 0.0;
    for (int j = 0; j < grid.n; ++j)
      dft += grid.weights(j) * v.torus_value(grid.x(j)) * std::cos(p * grid.x(j));
    CHECK(fourier_coefficient(v, p) == doctest::Approx(dft).epsilon(1e-10));
  }
}

TEST_CASE("positive-type validation") {
  SUBCASE("gaussian passes") {
    auto rep = validate_positive_type(make_gaussian_interaction(1.0, 0.5), make_box_grid(8.0, 128));
    CHECK(rep.pass);
    CHECK(rep.min_coefficient >= 0.0);
  }
  SUBCASE("torus cosine passes with minimum coefficient zero") {
    auto rep = validate_positive_type(make_cosine_interaction(10.0), make_torus_grid(64));
    CHECK(rep.pass);
    CHECK(rep.min_coefficient == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("bare cosine samples sit on the nonnegative boundary and pass") {
    auto grid = make_torus_grid(32);
    Vec samples(grid.n);
    for (int i = 0; i < grid.n; ++i) samples(i) = std::cos(kTwoPi * grid.x(i));
    auto rep = validate_positive_type(samples, grid);
    CHECK(rep.pass);
    CHECK(rep.min_coefficient > -1e-12);
  }
  SUBCASE("a genuinely negative-type sample fails with a report, not a throw") {
    auto grid = make_torus_grid(32);
    Vec samples(grid.n);
    for (int i = 0; i < grid.n; ++i) samples(i) = -std::cos(kTwoPi * grid.x(i)) - 0.5;
    auto rep = validate_positive_type(samples, grid);
    CHECK_FALSE(rep.pass);
  }
}

TEST_CASE("convolution") {
  SUBCASE("zero interaction gives zero") {
    auto grid = make_torus_grid(32);
    Vec rho = Vec::Random(grid.n).cwiseAbs();
    CHECK(convolve_density(make_zero_interaction(), rho, grid).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("constant density on the torus gives the integral of v") {
    auto grid = make_torus_grid(64);
    auto v = make_cosine_interaction(7.0);
    Vec rho = Vec::Ones(grid.n);
    Vec conv = convolve_density(v, rho, grid);
    for (int i = 0; i < grid.n; ++i) CHECK(conv(i) == doctest::Approx(7.0).epsilon(1e-13));
  }
  SUBCASE("delta column reproduces the kernel column") {
    auto grid = make_box_grid(4.0, 64);
    auto v = make_gaussian_interaction(1.0, 0.5);
    const int j = 20;
    Vec rho = Vec::Zero(grid.n);
    rho(j) = 1.0 / grid.weights(j);
    Vec conv = convolve_density(v, rho, grid);
    for (int i = 0; i < grid.n; ++i)
      CHECK(conv(i) == doctest::Approx(v.value(grid.x(i) - grid.x(j))).epsilon(1e-13));
  }
  SUBCASE("length mismatch throws") {
    auto grid = make_torus_grid(32);
    CHECK_THROWS_AS(convolve_density(make_cosine_interaction(1.0), Vec::Ones(8), grid),
                    std::invalid_argument);
  }
  SUBCASE("commutes with grid translation on periodic grids") {
    auto grid = make_torus_grid(32);
    auto v = make_gaussian_interaction(1.0, 0.1);
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Vec rho(grid.n);
    for (int i = 0; i < grid.n; ++i) rho(i) = dist(gen);
    Vec shifted(grid.n);
    for (int i = 0; i < grid.n; ++i) shifted(i) = rho((i + grid.n - 1) % grid.n);
    Vec a = convolve_density(v, shifted, grid);
    Vec b = convolve_density(v, rho, grid);
    for (int i = 0; i < grid.n; ++i)
      CHECK(a(i) == doctest::Approx(b((i + grid.n - 1) % grid.n)).epsilon(1e-13));
  }
}

TEST_CASE("quadrature exactness on the torus") {
  auto grid = make_torus_grid(16);
  CHECK(grid.weights.sum() == 1.0);
  double s = 0.0;
  for (int i = 0; i < grid.n; ++i) s += grid.weights(i) * std::pow(std::sin(kTwoPi * grid.x(i)), 2);
  CHECK(s == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("v(0) is the supremum of the interaction") {
  for (const auto& v : {make_cosine_interaction(3.0), make_gaussian_interaction(2.0, 0.4)}) {
    double sup = 0.0;
    for (int i = -400; i <= 400; ++i) sup = std::max(sup, v.value(i * 0.01));
    CHECK(v.v0() == doctest::Approx(sup).epsilon(1e-12));
    CHECK(v.value(0.7) == v.value(-0.7));  // even
  }
}

TEST_CASE("laplacian symbol approaches p^2 as h -> 0") {
  double p = kTwoPi;
  CHECK(laplacian_symbol(p, 1.0 / 1024) == doctest::Approx(p * p).epsilon(1e-5));
  CHECK(laplacian_symbol(p, 1.0 / 64) < p * p);  // stencil softens the dispersion
}
