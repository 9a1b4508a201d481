#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bogospec/bogoliubov.hpp"
#include "bogospec/torus.hpp"

using namespace bogospec;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("torus_dispersion closed forms") {
  CHECK(torus_dispersion(kTwoPi, 0.0) == doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-14));
  CHECK(torus_dispersion(kTwoPi, 5.0) == doctest::Approx(44.196488916967).epsilon(1e-12));
  CHECK(torus_dispersion(0.0, 3.0) == 0.0);
  CHECK_THROWS_AS(torus_dispersion(kTwoPi, -0.1), std::invalid_argument);
}

TEST_CASE("free torus spectrum: e_p = p^2 and vanishing trace sum") {
  auto spec = torus_spectrum(make_mode_basis(1, 2), make_zero_interaction());
  for (std::size_t i = 0; i < spec.basis.size(); ++i)
    CHECK(spec.e[i] == doctest::Approx(spec.basis.momentum_sq(i)).epsilon(1e-14));
  CHECK(spec.trace_sum == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("cosine g=10 trace sum") {
  auto spec = torus_spectrum(make_mode_basis(1, 2), make_cosine_interaction(10.0));
  CHECK(spec.trace_sum == doctest::Approx(10.5638573747803).epsilon(1e-12));
}

TEST_CASE("d=2 momentum-diagonal degenerate case") {
  auto basis = make_mode_basis(2, 1);
  REQUIRE(basis.size() == 9);
  const double g = 3.0;
  auto vhat = [g](std::span<const double> p) {
    for (double pj : p)
      if (std::abs(pj) > 1e-12) return 0.0;
    return g;
  };
  auto spec = torus_spectrum(basis, vhat);
  CHECK(spec.trace_sum == doctest::Approx(g).epsilon(1e-14));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis.momentum_sq(i) > 0.0)
      CHECK(spec.e[i] == doctest::Approx(basis.momentum_sq(i)).epsilon(1e-14));
  }
}

TEST_CASE("d=3 mode lattice") {
  auto basis = make_mode_basis(3, 1);
  REQUIRE(basis.size() == 27);
  auto spec = torus_spectrum(basis, make_zero_interaction());
  CHECK(spec.trace_sum == doctest::Approx(0.0).epsilon(1e-14));
  for (std::size_t i = 0; i < basis.size(); ++i)
    CHECK(spec.e[i] == doctest::Approx(basis.momentum_sq(i)).epsilon(1e-14));
}

TEST_CASE("spectrum symmetry and lower bound") {
  auto basis = make_mode_basis(1, 3);
  auto spec = torus_spectrum(basis, make_cosine_interaction(4.0));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    // e_p = e_{-p}
    std::array<int, 3> neg = {-basis.indices[i][0], 0, 0};
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (basis.indices[j] == neg) CHECK(spec.e[i] == doctest::Approx(spec.e[j]).epsilon(1e-14));
    // e_p >= p^2 since vhat >= 0
    CHECK(spec.e[i] >= basis.momentum_sq(i) - 1e-12);
  }
}

TEST_CASE("small-momentum linearity of the dispersion") {
  const double vhat0 = 2.0;
  const double limit = std::sqrt(2.0 * vhat0);
  double prev_err = 1e300;
  for (double p : {1e-1, 1e-2, 1e-3, 1e-4}) {
    double ratio = torus_dispersion(p, vhat0) / p;
    double err = std::abs(ratio - limit);
    CHECK(err < prev_err);  // converges to sqrt(2 vhat(0))
    prev_err = err;
  }
  CHECK(prev_err < 1e-8);
}

TEST_CASE("grid pipeline reproduces the torus oracle") {
  auto grid = make_torus_grid(256);
  auto v = make_cosine_interaction(10.0);
  auto sol = solve_hartree(grid, {}, v);
  auto ob = assemble_onebody(sol, grid, {}, v, 5);
  auto bog = compute_E(ob);

  auto corrected = torus_spectrum(make_mode_basis(1, 2), v, grid.n);
  auto continuum = torus_spectrum(make_mode_basis(1, 2), v);

  std::vector<double> osc_corr, osc_cont;
  for (std::size_t i = 0; i < corrected.basis.size(); ++i) {
    if (corrected.basis.momentum_sq(i) > 0.0) {
      osc_corr.push_back(corrected.e[i]);
      osc_cont.push_back(continuum.e[i]);
    }
  }
  std::sort(osc_corr.begin(), osc_corr.end());
  std::sort(osc_cont.begin(), osc_cont.end());
  REQUIRE(static_cast<Index>(osc_corr.size()) == bog.e.size());
  for (Index i = 0; i < bog.e.size(); ++i) {
    CHECK(std::abs(bog.e(i) - osc_corr[i]) / osc_corr[i] < 1e-6);   // stencil-corrected oracle
    CHECK(std::abs(bog.e(i) - osc_cont[i]) / osc_cont[i] < 1e-3);   // continuum oracle
  }
  CHECK(std::abs(bog.trace_correction - corrected.trace_sum) < 1e-8 * corrected.trace_sum);
}
