#pragma once

#include <vector>

#include "bogospec/onebody.hpp"
#include "bogospec/types.hpp"

namespace bogospec {

struct BogoliubovResult {
  Mat E;                          // full truncated space, E phi0 = 0 exactly
  Vec e;                          // excitation energies (Q eigenvalues), ascending
  double trace_correction = 0.0;  // tr(D + V - E), phi0 direction included
  double coeff_linear = 0.0;      // a in E0(N) ~ a N + b
  double coeff_const = 0.0;       // b
};

/// E = (D^{1/2} (D + 2V) D^{1/2})^{1/2}. The phi0 row/column of the inner
/// matrix vanishes identically, so the root is taken on the Q block and
/// embedded back; E phi0 = 0 holds exactly.
BogoliubovResult compute_E(const OneBodySet& ob);

/// Positive eigenvalues of the non-symmetric block problem
/// [[D+V, V], [-V, -(D+V)]] on Q. Must reproduce spec(E).
Vec bdg_spectrum(const OneBodySet& ob);

/// tr(D + V - E) over the full truncated basis; the phi0 diagonal
/// contributes exactly v0000.
double trace_correction(const OneBodySet& ob, const BogoliubovResult& bog);

/// N h00 + (N+1)/2 v0000 - tr(D+V-E)/2; the O(N^{-1/2}) term is omitted.
double predict_ground_energy(const BogoliubovResult& bog, const HartreeSolution& sol, int N);

/// All distinct sums  sum_i n_i e_i <= xi  with sum_i n_i <= N, ascending,
/// zero included, deduplicated at relative 1e-12.
std::vector<double> enumerate_excitations(const std::vector<double>& e, double xi, int N);

}  // namespace bogospec
