#include "bogospec/onebody.hpp"

#include <cmath>
#include <stdexcept>

namespace bogospec {

namespace {

/// Flip column signs so the first significant entry is positive. Eigenvector
/// signs are arbitrary; this pins them for reproducible output.
void sign_fix_columns(Mat& M) {
  for (Index c = 0; c < M.cols(); ++c) {
    const double scale = M.col(c).cwiseAbs().maxCoeff();
    for (Index r = 0; r < M.rows(); ++r) {
      if (std::abs(M(r, c)) > 1e-8 * scale) {
        if (M(r, c) < 0.0) M.col(c) = -M.col(c);
        break;
      }
    }
  }
}

}  // namespace

OneBodySet assemble_onebody(const HartreeSolution& sol, const GridSpec& grid,
                            const ExternalPotential& vext, const Interaction& v, int m) {
  if (!sol.converged) throw std::invalid_argument("assemble_onebody: Hartree solution not converged");
  if (m < 2 || m > grid.n) throw std::invalid_argument("assemble_onebody: need 2 <= m <= n");

  Vec density = sol.phi0.cwiseProduct(sol.phi0);
  Vec mean_field = convolve_density(v, density, grid);
  GridOperator hh(grid, vext.sample(grid) + mean_field);

  Eigen::SelfAdjointEigenSolver<Mat> eig(hh.dense());
  if (eig.info() != Eigen::Success) throw std::runtime_error("assemble_onebody: eigensolver failed");

  OneBodySet ob;
  ob.m = m;
  ob.eps = eig.eigenvalues().head(m);
  ob.modes = eig.eigenvectors().leftCols(m) / std::sqrt(grid.h);  // quadrature-orthonormal
  sign_fix_columns(ob.modes);

  const double gap = ob.eps(1) - ob.eps(0);
  if (gap <= 1e-10 * (std::abs(ob.eps(0)) + std::abs(ob.eps(1)) + 1.0))
    throw std::runtime_error("assemble_onebody: spectral gap eps1 - eps0 is degenerate");

  ob.D = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i) ob.D(i, i) = ob.eps(i) - ob.eps(0);

  // V_ij by double quadrature of phi_i(x) phi0(x) v(x-y) phi0(y) phi_j(y)
  Mat K = kernel_matrix(v, grid);
  Mat F = grid.weights.cwiseProduct(sol.phi0).asDiagonal() * ob.modes;  // n x m
  ob.V = F.transpose() * K * F;
  ob.V = 0.5 * (ob.V + ob.V.transpose()).eval();
  return ob;
}

Mat sqrt_psd(const Mat& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("sqrt_psd: matrix must be square");
  Mat S = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(S);
  if (eig.info() != Eigen::Success) throw std::runtime_error("sqrt_psd: eigensolver failed");
  Vec lam = eig.eigenvalues();
  const double norm = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
  if (lam(0) < -1e-8 * norm)
    throw std::invalid_argument("sqrt_psd: matrix is indefinite (min eigenvalue " +
                                std::to_string(lam(0)) + ")");
  Vec root = lam.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

SymplecticSet compute_symplectic(const Mat& Dq, const Mat& Eq) {
  const Index q = Dq.rows();
  if (Eq.rows() != q || Eq.cols() != q || Dq.cols() != q)
    throw std::invalid_argument("compute_symplectic: block size mismatch");

  Vec d = Dq.diagonal();
  const double dmax = d.maxCoeff();
  for (Index i = 0; i < q; ++i) {
    if (d(i) <= 1e-12 * dmax)
      throw std::runtime_error("compute_symplectic: near-singular D on Q; basis too large");
  }
  Vec d_half = d.cwiseSqrt();
  Vec d_inv_half = d_half.cwiseInverse();

  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (Eq + Eq.transpose()));
  Vec e = eig.eigenvalues();
  Mat U0 = eig.eigenvectors();  // ascending by construction
  sign_fix_columns(U0);
  const double emin = e(0);
  if (emin <= 0.0) throw std::runtime_error("compute_symplectic: E not positive on Q");

  Mat E_half = U0 * e.cwiseSqrt().asDiagonal() * U0.transpose();
  Mat E_inv_half = U0 * e.cwiseSqrt().cwiseInverse().asDiagonal() * U0.transpose();

  SymplecticSet s;
  s.e = e;
  s.U0 = U0;
  s.A = d_half.asDiagonal() * E_inv_half;
  s.B = d_inv_half.asDiagonal() * E_half;
  s.abs_Astar = sqrt_psd(s.A * s.A.transpose());

  // alpha = -log |A*| through the eigenvalues of |A*|
  Eigen::SelfAdjointEigenSolver<Mat> pol(s.abs_Astar);
  Vec mu = pol.eigenvalues();
  if (mu(0) <= 0.0) throw std::runtime_error("compute_symplectic: |A*| not positive definite");
  s.alpha = pol.eigenvectors() * (-mu.array().log()).matrix().asDiagonal() *
            pol.eigenvectors().transpose();
  s.alpha = 0.5 * (s.alpha + s.alpha.transpose()).eval();

  // polar factor W0 = |A*|^{-1} A
  s.W0 = pol.eigenvectors() * mu.cwiseInverse().asDiagonal() * pol.eigenvectors().transpose() * s.A;
  return s;
}

}  // namespace bogospec
