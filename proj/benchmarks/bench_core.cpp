#include <benchmark/benchmark.h>

#include "bogospec/bogoliubov.hpp"
#include "bogospec/fock.hpp"
#include "bogospec/hartree.hpp"
#include "bogospec/onebody.hpp"

using namespace bogospec;

namespace {

void BM_hartree_torus(benchmark::State& state) {
  auto grid = make_torus_grid(static_cast<int>(state.range(0)));
  auto v = make_cosine_interaction(10.0);
  for (auto _ : state) {
    auto sol = solve_hartree(grid, {}, v);
    benchmark::DoNotOptimize(sol.eps0);
  }
}
BENCHMARK(BM_hartree_torus)->Arg(128)->Arg(256);

void BM_hartree_trap(benchmark::State& state) {
  auto grid = make_box_grid(8.0, static_cast<int>(state.range(0)));
  ExternalPotential pot{PotentialKind::harmonic, 1.0};
  auto v = make_gaussian_interaction(1.0, 0.5);
  for (auto _ : state) {
    auto sol = solve_hartree(grid, pot, v);
    benchmark::DoNotOptimize(sol.eps0);
  }
}
BENCHMARK(BM_hartree_trap)->Arg(256)->Arg(512);

void BM_onebody_and_E(benchmark::State& state) {
  auto grid = make_box_grid(8.0, 512);
  ExternalPotential pot{PotentialKind::harmonic, 1.0};
  auto v = make_gaussian_interaction(1.0, 0.5);
  auto sol = solve_hartree(grid, pot, v);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto ob = assemble_onebody(sol, grid, pot, v, m);
    auto bog = compute_E(ob);
    benchmark::DoNotOptimize(bog.trace_correction);
  }
}
BENCHMARK(BM_onebody_and_E)->Arg(32)->Arg(64);

void BM_assemble_HN(benchmark::State& state) {
  auto grid = make_torus_grid(128);
  auto v = make_cosine_interaction(1.0);
  auto sol = solve_hartree(grid, {}, v);
  auto ob = assemble_onebody(sol, grid, {}, v, 5);
  auto t = compute_tensors(ob, grid, {}, v, 5);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    FockBasis basis(4, N);
    auto H = assemble_HN(t, basis);
    benchmark::DoNotOptimize(H.nonZeros());
  }
}
BENCHMARK(BM_assemble_HN)->Arg(8)->Arg(16)->Arg(32);

void BM_ed_ground_state(benchmark::State& state) {
  auto grid = make_torus_grid(128);
  auto v = make_cosine_interaction(1.0);
  auto sol = solve_hartree(grid, {}, v);
  auto ob = assemble_onebody(sol, grid, {}, v, 5);
  auto t = compute_tensors(ob, grid, {}, v, 5);
  FockBasis basis(4, static_cast<int>(state.range(0)));
  auto H = assemble_HN(t, basis);
  for (auto _ : state) {
    auto ed = ed_lowest(H, 1);
    benchmark::DoNotOptimize(ed.values(0));
  }
}
BENCHMARK(BM_ed_ground_state)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_expm_condensate(benchmark::State& state) {
  auto grid = make_torus_grid(128);
  auto v = make_cosine_interaction(1.0);
  auto sol = solve_hartree(grid, {}, v);
  auto ob = assemble_onebody(sol, grid, {}, v, 5);
  auto bog = compute_E(ob);
  auto sym = compute_symplectic(ob.Dq(), bog.E.bottomRightCorner(4, 4));
  FockBasis basis(4, static_cast<int>(state.range(0)));
  auto X = assemble_X(sym.alpha, basis);
  for (auto _ : state) {
    auto w = apply_Udagger_condensate(X, basis);
    benchmark::DoNotOptimize(w.norm());
  }
}
BENCHMARK(BM_expm_condensate)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
