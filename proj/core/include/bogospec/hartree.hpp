#pragma once

#include "bogospec/domain.hpp"
#include "bogospec/types.hpp"

namespace bogospec {

struct ScfParams {
  double mixing = 0.5;
  double tol = 1e-10;
  int max_iter = 500;
};

struct HartreeSolution {
  Vec phi0;              // quadrature-normalized, strictly positive
  double eps0 = 0.0;     // lowest eigenvalue of the converged Hartree operator
  double hartree_energy = 0.0;
  double kinetic_ext = 0.0;  // <phi0| -Lap + V_ext |phi0>  (h_00)
  double v0000 = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  double boundary_amplitude = 0.0;  // max |phi0| at the box edge cells; box-truncation adequacy
};

/// One-body grid operator  -Lap + diag(potential)  with the 3-point stencil
/// (periodic wrap on the torus, zero Dirichlet ghost cells on the box).
class GridOperator {
 public:
  GridOperator(const GridSpec& grid, Vec potential);

  Vec apply(const Vec& f) const;
  Mat dense() const;
  Index size() const { return diag_.size(); }
  bool periodic() const { return periodic_; }
  double inv_h2() const { return inv_h2_; }
  const Vec& diagonal() const { return diag_; }

 private:
  bool periodic_;
  double inv_h2_;
  Vec diag_;  // 2/h^2 + potential
};

/// Kinetic + external part only, as a GridOperator.
GridOperator one_body_operator(const GridSpec& grid, const ExternalPotential& vext);

/// Damped SCF solution of (-Lap + V_ext + v*phi^2) phi = eps0 phi.
/// Non-convergence is reported through the returned diagnostics, never
/// silently; loss of positivity throws.
HartreeSolution solve_hartree(const GridSpec& grid, const ExternalPotential& vext,
                              const Interaction& v, const ScfParams& params = {});

/// Hartree energy functional of a normalized state.
double hartree_functional(const Vec& phi, const GridSpec& grid, const ExternalPotential& vext,
                          const Interaction& v);

}  // namespace bogospec
