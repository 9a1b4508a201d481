#pragma once

#include "bogospec/domain.hpp"
#include "bogospec/hartree.hpp"
#include "bogospec/types.hpp"

namespace bogospec {

/// Truncated one-particle data in the Hartree eigenbasis: D is diagonal by
/// construction, V has entries <phi_i| phi0 v phi0 |phi_j>.
struct OneBodySet {
  int m = 0;   // kept modes, phi0 included
  Vec eps;     // sorted Hartree eigenvalues
  Mat modes;   // n x m grid columns, quadrature-orthonormal, sign-fixed
  Mat D;       // diag(eps_i - eps_0)
  Mat V;

  double gap() const { return eps(1) - eps(0); }
  Mat Dq() const { return D.bottomRightCorner(m - 1, m - 1); }
  Mat Vq() const { return V.bottomRightCorner(m - 1, m - 1); }
};

OneBodySet assemble_onebody(const HartreeSolution& sol, const GridSpec& grid,
                            const ExternalPotential& vext, const Interaction& v, int m);

/// Symmetric PSD square root by eigendecomposition; eigenvalues in
/// [-1e-10*norm, 0) are clipped to zero, anything below -1e-8*norm throws.
Mat sqrt_psd(const Mat& M);

/// Bogoliubov-transformation data on the Q-subspace (indices i >= 1).
struct SymplecticSet {
  Mat A;         // D^{1/2} E^{-1/2}
  Mat B;         // D^{-1/2} E^{1/2}
  Mat abs_Astar; // |A*| = (A A^T)^{1/2}
  Mat W0;        // orthogonal polar factor, A = |A*| W0
  Mat alpha;     // log(|A*|^{-1}), symmetric PSD
  Mat U0;        // orthogonal, U0^T E U0 diagonal ascending
  Vec e;         // eigenvalues of E on Q, ascending
};

SymplecticSet compute_symplectic(const Mat& Dq, const Mat& Eq);

}  // namespace bogospec
