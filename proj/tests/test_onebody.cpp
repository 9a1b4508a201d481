#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bogospec/bogoliubov.hpp"
#include "bogospec/onebody.hpp"
#include "oracles.hpp"

using namespace bogospec;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct TorusSetup {
  GridSpec grid;
  Interaction v;
  HartreeSolution sol;
  OneBodySet ob;
};

TorusSetup torus_setup(double g, int n = 256, int K = 2) {
  TorusSetup s;
  s.grid = make_torus_grid(n);
  s.v = make_cosine_interaction(g);
  s.sol = solve_hartree(s.grid, {}, s.v);
  s.ob = assemble_onebody(s.sol, s.grid, {}, s.v, 2 * K + 1);
  return s;
}

struct TrapSetup {
  GridSpec grid;
  ExternalPotential pot;
  Interaction v;
  HartreeSolution sol;
};

TrapSetup trap_setup(int n = 256) {
  TrapSetup s;
  s.grid = make_box_grid(8.0, n);
  s.pot = {PotentialKind::harmonic, 1.0};
  s.v = make_gaussian_interaction(1.0, 0.5);
  s.sol = solve_hartree(s.grid, s.pot, s.v);
  return s;
}

}  // namespace

TEST_CASE("sqrt_psd") {
  SUBCASE("diagonal example") {
    Mat M = Vec::Zero(3).asDiagonal();
    M.diagonal() << 0.0, 4.0, 9.0;
    Mat S = sqrt_psd(M);
    CHECK(S(0, 0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(S(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(S(2, 2) == doctest::Approx(3.0).epsilon(1e-14));
  }
  SUBCASE("identity is a fixed point") {
    Mat I = Mat::Identity(4, 4);
    CHECK((sqrt_psd(I) - I).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("seeded PSD round trips") {
    for (unsigned seed = 0; seed < 10; ++seed) {
      Mat G = testing::random_psd(5, seed);
      Mat S = sqrt_psd(G);
      CHECK((S * S - G).cwiseAbs().maxCoeff() <= 1e-10 * G.cwiseAbs().maxCoeff());
      CHECK((S - S.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
  SUBCASE("indefinite input throws") {
    Mat M = Mat::Zero(2, 2);
    M(0, 0) = 1.0;
    M(1, 1) = -1.0;
    CHECK_THROWS_AS(sqrt_psd(M), std::invalid_argument);
  }
}

TEST_CASE("torus one-body set is diagonal with stencil and fourier entries") {
  auto s = torus_setup(10.0);
  const double h = s.grid.h;
  REQUIRE(s.ob.m == 5);

  // D: 0, lambda(2pi) x2, lambda(4pi) x2; V: vhat per |p|
  Vec d = s.ob.D.diagonal();
  CHECK(d(0) == 0.0);
  CHECK(d(1) == doctest::Approx(laplacian_symbol(kTwoPi, h)).epsilon(1e-10));
  CHECK(d(2) == doctest::Approx(laplacian_symbol(kTwoPi, h)).epsilon(1e-10));
  CHECK(d(3) == doctest::Approx(laplacian_symbol(2 * kTwoPi, h)).epsilon(1e-10));
  CHECK(d(4) == doctest::Approx(laplacian_symbol(2 * kTwoPi, h)).epsilon(1e-10));

  Vec vd = s.ob.V.diagonal();
  CHECK(vd(0) == doctest::Approx(10.0).epsilon(1e-10));
  CHECK(vd(1) == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(vd(2) == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(std::abs(vd(3)) < 1e-9);
  CHECK(std::abs(vd(4)) < 1e-9);

  // off-diagonal mass
  Mat offV = s.ob.V;
  offV.diagonal().setZero();
  CHECK(offV.cwiseAbs().maxCoeff() < 1e-9);

  SUBCASE("V is PSD and the gap is positive") {
    Eigen::SelfAdjointEigenSolver<Mat> eig(s.ob.V);
    CHECK(eig.eigenvalues()(0) >= -1e-10 * s.ob.V.cwiseAbs().maxCoeff());
    CHECK(s.ob.gap() > 0.0);
  }
}

TEST_CASE("zero interaction gives V = 0") {
  auto grid = make_torus_grid(64);
  auto sol = solve_hartree(grid, {}, make_zero_interaction());
  auto ob = assemble_onebody(sol, grid, {}, make_zero_interaction(), 5);
  CHECK(ob.V.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("trace of V equals v(0) on the full basis") {
  auto s = trap_setup(128);
  auto ob = assemble_onebody(s.sol, s.grid, s.pot, s.v, s.grid.n);
  CHECK(ob.V.trace() == doctest::Approx(s.v.v0()).epsilon(1e-10));
}

TEST_CASE("assemble_onebody rejects unconverged input") {
  auto s = trap_setup(128);
  auto bad = s.sol;
  bad.converged = false;
  CHECK_THROWS_AS(assemble_onebody(bad, s.grid, s.pot, s.v, 8), std::invalid_argument);
}

TEST_CASE("compute_symplectic closed forms") {
  SUBCASE("1x1: D=2, V=1 gives A = 2^(-1/4) and alpha = ln(2)/4") {
    Mat Dq(1, 1), Eq(1, 1);
    Dq << 2.0;
    Eq << 2.0 * std::sqrt(2.0);  // E = sqrt(D(D+2V)) with V = 1
    auto s = compute_symplectic(Dq, Eq);
    CHECK(s.A(0, 0) == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-14));
    CHECK(s.alpha(0, 0) == doctest::Approx(std::log(2.0) / 4.0).epsilon(1e-12));
    CHECK(s.alpha(0, 0) == doctest::Approx(0.173287).epsilon(1e-5));
  }
  SUBCASE("zero interaction: A = B = 1, alpha = 0") {
    auto grid = make_torus_grid(64);
    auto sol = solve_hartree(grid, {}, make_zero_interaction());
    auto ob = assemble_onebody(sol, grid, {}, make_zero_interaction(), 5);
    auto bog = compute_E(ob);
    auto s = compute_symplectic(ob.Dq(), bog.E.bottomRightCorner(4, 4));
    CHECK((s.A - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((s.B - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(s.alpha.cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("near-singular D aborts") {
    Mat Dq = Mat::Identity(2, 2);
    Dq(1, 1) = 1e-15;
    Mat Eq = Mat::Identity(2, 2);
    CHECK_THROWS_AS(compute_symplectic(Dq, Eq), std::runtime_error);
  }
}

TEST_CASE("symplectic invariants on the torus") {
  auto s = torus_setup(10.0);
  auto bog = compute_E(s.ob);
  const int q = s.ob.m - 1;
  auto sym = compute_symplectic(s.ob.Dq(), bog.E.bottomRightCorner(q, q));

  SUBCASE("A^T B = 1 (symplectic condition restricted)") {
    CHECK((sym.A.transpose() * sym.B - Mat::Identity(q, q)).cwiseAbs().maxCoeff() < 1e-8);
  }
  SUBCASE("|B*| = |A*|^-1") {
    Mat absB = sqrt_psd(sym.B * sym.B.transpose());
    CHECK((absB * sym.abs_Astar - Mat::Identity(q, q)).cwiseAbs().maxCoeff() < 1e-8);
  }
  SUBCASE("W0 orthogonal, U0 orders E ascending") {
    CHECK((sym.W0 * sym.W0.transpose() - Mat::Identity(q, q)).cwiseAbs().maxCoeff() < 1e-10);
    Mat Ed = sym.U0.transpose() * bog.E.bottomRightCorner(q, q) * sym.U0;
    Mat off = Ed;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() < 1e-9);
    for (int i = 1; i < q; ++i) CHECK(Ed(i, i) >= Ed(i - 1, i - 1) - 1e-12);
  }
  SUBCASE("alpha matches the commuting-case diagonal formula") {
    // alpha_pp = log(1 + 2 vhat(p)/ptilde^2) / 4 on the torus
    double lam = laplacian_symbol(kTwoPi, s.grid.h);
    Vec expected(4);
    expected << 0.25 * std::log1p(2.0 * 5.0 / lam), 0.25 * std::log1p(2.0 * 5.0 / lam), 0.0, 0.0;
    double norm_diag = expected.norm();
    CHECK(sym.alpha.norm() == doctest::Approx(norm_diag).epsilon(1e-10));
  }
  SUBCASE("E and alpha are diagonal in the translation-invariant configuration") {
    Mat Eoff = bog.E;
    Eoff.diagonal().setZero();
    CHECK(Eoff.cwiseAbs().maxCoeff() < 1e-9);
    Mat Aoff = sym.alpha;
    Aoff.diagonal().setZero();
    CHECK(Aoff.cwiseAbs().maxCoeff() < 1e-9);
  }
  SUBCASE("D <= E") {
    Mat diff = bog.E - s.ob.D;
    Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (diff + diff.transpose()));
    CHECK(eig.eigenvalues()(0) >= -1e-10 * bog.E.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("trace-class chain is Cauchy in the mode cutoff") {
  auto s = trap_setup(512);
  auto hs_norm = [&](int m) {
    auto ob = assemble_onebody(s.sol, s.grid, s.pot, s.v, m);
    auto bog = compute_E(ob);
    const int q = m - 1;
    Vec dq = ob.D.diagonal().tail(q);
    Mat EmD = (bog.E - ob.D).bottomRightCorner(q, q);
    Mat M = dq.cwiseSqrt().asDiagonal() * EmD * dq.cwiseSqrt().cwiseInverse().asDiagonal();
    return M.norm();
  };
  double n32 = hs_norm(32), n64 = hs_norm(64);
  CHECK(std::abs(n64 - n32) < 0.01 * n32);
}
