#include "bogospec/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bogospec {

BogoliubovResult compute_E(const OneBodySet& ob) {
  const int m = ob.m;
  // D^{1/2}(D+2V)D^{1/2}: the phi0 row and column vanish identically since
  // D_00 = 0, so the root is taken on the Q block and embedded back.
  Vec d_half = ob.D.diagonal().cwiseSqrt();
  Mat inner = d_half.asDiagonal() * (ob.D + 2.0 * ob.V) * d_half.asDiagonal();
  Mat inner_q = inner.bottomRightCorner(m - 1, m - 1);
  inner_q = 0.5 * (inner_q + inner_q.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Mat> eig(inner_q);
  if (eig.info() != Eigen::Success) throw std::runtime_error("compute_E: eigensolver failed");
  Vec lam = eig.eigenvalues();
  const double scale = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
  if (lam(0) < -1e-8 * scale) throw std::runtime_error("compute_E: inner matrix is indefinite");
  Vec e = lam.cwiseMax(0.0).cwiseSqrt();

  BogoliubovResult out;
  out.E = Mat::Zero(m, m);
  out.E.bottomRightCorner(m - 1, m - 1) =
      eig.eigenvectors() * e.asDiagonal() * eig.eigenvectors().transpose();
  out.e = e;
  out.trace_correction = trace_correction(ob, out);
  // E0(N) ~ a N + b: eps0 = h00 + v0000 pins h00 from the one-body data
  out.coeff_linear = ob.eps(0) - 0.5 * ob.V(0, 0);
  out.coeff_const = 0.5 * ob.V(0, 0) - 0.5 * out.trace_correction;
  return out;
}

Vec bdg_spectrum(const OneBodySet& ob) {
  const int q = ob.m - 1;
  Mat Dq = ob.Dq();
  Mat Vq = ob.Vq();
  Mat block(2 * q, 2 * q);
  block.topLeftCorner(q, q) = Dq + Vq;
  block.topRightCorner(q, q) = Vq;
  block.bottomLeftCorner(q, q) = -Vq;
  block.bottomRightCorner(q, q) = -(Dq + Vq);

  Eigen::EigenSolver<Mat> eig(block);
  if (eig.info() != Eigen::Success) throw std::runtime_error("bdg_spectrum: eigensolver failed");

  const double scale = (Dq + Vq).cwiseAbs().maxCoeff();
  std::vector<double> omega;
  for (Index i = 0; i < eig.eigenvalues().size(); ++i) {
    auto lambda = eig.eigenvalues()(i);
    if (std::abs(lambda.imag()) > 1e-8 * scale)
      throw std::runtime_error("bdg_spectrum: complex eigenvalue; inputs inadmissible");
    if (lambda.real() > 1e-12 * scale) omega.push_back(lambda.real());
  }
  if (static_cast<int>(omega.size()) != q)
    throw std::runtime_error("bdg_spectrum: expected " + std::to_string(q) +
                             " positive eigenvalues, got " + std::to_string(omega.size()));
  std::sort(omega.begin(), omega.end());
  Vec out(q);
  for (int i = 0; i < q; ++i) out(i) = omega[i];
  return out;
}

double trace_correction(const OneBodySet& ob, const BogoliubovResult& bog) {
  return (ob.D.diagonal() + ob.V.diagonal() - bog.E.diagonal()).sum();
}

double predict_ground_energy(const BogoliubovResult& bog, const HartreeSolution& sol, int N) {
  if (N < 2) throw std::invalid_argument("predict_ground_energy: need N >= 2");
  return N * sol.kinetic_ext + 0.5 * (N + 1) * sol.v0000 - 0.5 * bog.trace_correction;
}

namespace {

void enumerate_rec(const std::vector<double>& e, std::size_t mode, double remaining, int budget,
                   double value, std::vector<double>& out, std::size_t cap) {
  out.push_back(value);
  if (out.size() > cap)
    throw std::runtime_error("enumerate_excitations: more than 1e6 entries; tighten xi or N");
  for (std::size_t i = mode; i < e.size(); ++i) {
    if (budget <= 0 || e[i] > remaining) continue;
    enumerate_rec(e, i, remaining - e[i], budget - 1, value + e[i], out, cap);
  }
}

}  // namespace

std::vector<double> enumerate_excitations(const std::vector<double>& e, double xi, int N) {
  if (xi < 0.0) throw std::invalid_argument("enumerate_excitations: need xi >= 0");
  for (double ei : e)
    if (ei <= 0.0) throw std::invalid_argument("enumerate_excitations: energies must be positive");
  std::vector<double> sorted = e;
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> sums;
  enumerate_rec(sorted, 0, xi, N, 0.0, sums, 1000000);
  std::sort(sums.begin(), sums.end());

  const double tol = 1e-12 * std::max(xi, 1e-300);
  std::vector<double> dedup;
  for (double s : sums) {
    if (dedup.empty() || s - dedup.back() > tol) dedup.push_back(s);
  }
  return dedup;
}

}  // namespace bogospec
