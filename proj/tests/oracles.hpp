#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include <random>
#include <vector>

#include "bogospec/domain.hpp"
#include "bogospec/fock.hpp"
#include "bogospec/hartree.hpp"
#include "bogospec/onebody.hpp"

namespace bogospec::testing {

/// First-quantized two-boson Hamiltonian on symmetrized mode pairs, computed
/// by direct grid quadrature (no creation/annihilation algebra). Rows and
/// columns follow FockBasis(M, 2) ordering.
inline Mat dense_two_boson_hamiltonian(const OneBodySet& ob, const GridSpec& grid,
                                       const ExternalPotential& vext, const Interaction& v,
                                       int nmodes) {
  const int n = grid.n;
  FockBasis basis(nmodes - 1, 2);
  const std::size_t S = basis.size();

  Mat A = one_body_operator(grid, vext).dense();
  Mat K = kernel_matrix(v, grid);
  Mat modes = ob.modes.leftCols(nmodes);

  // pair (i <= j) for each occupation state
  std::vector<std::pair<int, int>> pairs(S);
  for (std::size_t s = 0; s < S; ++s) {
    auto st = basis.state(s);
    int first = -1, second = -1;
    for (int m = 0; m < nmodes; ++m) {
      if (st[m] == 2) first = second = m;
      if (st[m] == 1) (first < 0 ? first : second) = m;
    }
    pairs[s] = {first, second};
  }

  auto sym_wave = [&](int i, int j) {
    Mat S2 = modes.col(i) * modes.col(j).transpose();
    S2 += modes.col(j) * modes.col(i).transpose();
    S2 /= std::sqrt(2.0 * (i == j ? 2.0 : 1.0));
    return S2;
  };

  const double h2 = grid.h * grid.h;
  Mat H = Mat::Zero(S, S);
  for (std::size_t r = 0; r < S; ++r) {
    Mat Sr = sym_wave(pairs[r].first, pairs[r].second);
    for (std::size_t c = 0; c < S; ++c) {
      Mat Sc = sym_wave(pairs[c].first, pairs[c].second);
      double one_body = h2 * (Sr.cwiseProduct(A * Sc).sum() + Sr.cwiseProduct(Sc * A.transpose()).sum());
      double two_body = h2 * Sr.cwiseProduct(K.cwiseProduct(Sc)).sum();  // v(x1 - x2) / (N-1), N = 2
      H(r, c) = one_body + two_body;
    }
  }
  return H;
}

/// Brute-force excitation sums by direct loops over occupation tuples.
inline std::vector<double> brute_force_excitations(const std::vector<double>& e, double xi, int N) {
  std::vector<double> sums;
  std::vector<int> counts(e.size(), 0);
  auto rec = [&](auto&& self, std::size_t mode, int used, double value) -> void {
    if (mode == e.size()) {
      if (value <= xi) sums.push_back(value);
      return;
    }
    for (int c = 0; used + c <= N; ++c) {
      double val = value + c * e[mode];
      if (val > xi * (1.0 + 1e-15) && c > 0) break;
      self(self, mode + 1, used + c, val);
    }
  };
  rec(rec, 0, 0, 0.0);
  std::sort(sums.begin(), sums.end());
  const double tol = 1e-12 * std::max(xi, 1e-300);
  std::vector<double> dedup;
  for (double s : sums)
    if (dedup.empty() || s - dedup.back() > tol) dedup.push_back(s);
  return dedup;
}

inline Mat random_psd(int dim, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Mat R(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) R(i, j) = dist(gen);
  return R * R.transpose();
}

/// b_i as an explicit sparse matrix on the N-sector (operator-product oracle).
inline SpMat b_matrix(const FockBasis& basis, int mode_i) {
  const int N = basis.particles();
  std::vector<Eigen::Triplet<double>> trip;
  std::vector<int> scratch(basis.num_modes());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    auto st = basis.state(col);
    if (st[mode_i] == 0) continue;
    // b_i = a_i a_0+ / sqrt(N-1)
    double amp = std::sqrt(double(st[mode_i]) * (st[0] + 1) / (N - 1.0));
    std::copy(st.begin(), st.end(), scratch.begin());
    --scratch[mode_i];
    ++scratch[0];
    trip.emplace_back(static_cast<int>(basis.index(scratch)), static_cast<int>(col), amp);
  }
  SpMat B(basis.size(), basis.size());
  B.setFromTriplets(trip.begin(), trip.end());
  return B;
}

}  // namespace bogospec::testing
