#include "bogospec/hartree.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "bogospec/linalg.hpp"

namespace bogospec {

GridOperator::GridOperator(const GridSpec& grid, Vec potential)
    : periodic_(grid.periodic()), inv_h2_(1.0 / (grid.h * grid.h)) {
  if (potential.size() != grid.n) throw std::invalid_argument("GridOperator: potential length mismatch");
  diag_ = potential.array() + 2.0 * inv_h2_;
}

Vec GridOperator::apply(const Vec& f) const {
  const Index n = diag_.size();
  Vec out = diag_.cwiseProduct(f);
  for (Index i = 0; i + 1 < n; ++i) {
    out(i) -= inv_h2_ * f(i + 1);
    out(i + 1) -= inv_h2_ * f(i);
  }
  if (periodic_) {
    out(0) -= inv_h2_ * f(n - 1);
    out(n - 1) -= inv_h2_ * f(0);
  }
  return out;
}

Mat GridOperator::dense() const {
  const Index n = diag_.size();
  Mat M = Mat::Zero(n, n);
  for (Index i = 0; i < n; ++i) M(i, i) = diag_(i);
  for (Index i = 0; i + 1 < n; ++i) M(i, i + 1) = M(i + 1, i) = -inv_h2_;
  if (periodic_) M(0, n - 1) = M(n - 1, 0) = -inv_h2_;
  return M;
}

GridOperator one_body_operator(const GridSpec& grid, const ExternalPotential& vext) {
  return GridOperator(grid, vext.sample(grid));
}

namespace {

double weighted_norm(const Vec& f, const GridSpec& grid) {
  return std::sqrt(grid.weights.dot(f.cwiseProduct(f)));
}

Vec initial_guess(const GridSpec& grid) {
  if (grid.periodic()) return Vec::Ones(grid.n);
  Vec phi(grid.n);
  for (int i = 0; i < grid.n; ++i) phi(i) = std::exp(-0.5 * grid.x(i) * grid.x(i));
  return phi / weighted_norm(phi, grid);
}

/// Thomas solve of (A - sigma) x = rhs for the tridiagonal part of the grid
/// operator; the sub/super-diagonal is the constant -1/h^2.
Vec tridiag_solve(const Vec& diag, double off, const Vec& rhs) {
  const Index n = diag.size();
  Vec c(n), d(n);
  c(0) = off / diag(0);
  d(0) = rhs(0) / diag(0);
  for (Index i = 1; i < n; ++i) {
    double denom = diag(i) - off * c(i - 1);
    c(i) = off / denom;
    d(i) = (rhs(i) - off * d(i - 1)) / denom;
  }
  Vec x(n);
  x(n - 1) = d(n - 1);
  for (Index i = n - 2; i >= 0; --i) x(i) = d(i) - c(i) * x(i + 1);
  return x;
}

/// (A - sigma) x = rhs with periodic corner entries handled by
/// Sherman-Morrison on top of two Thomas solves.
Vec shifted_solve(const GridOperator& op, double sigma, const Vec& rhs) {
  const Index n = op.size();
  const double off = -op.inv_h2();
  Vec diag = op.diagonal().array() - sigma;
  if (!op.periodic()) return tridiag_solve(diag, off, rhs);

  const double gamma = -diag(0);
  Vec dmod = diag;
  dmod(0) -= gamma;
  dmod(n - 1) -= off * off / gamma;
  Vec u = Vec::Zero(n);
  u(0) = gamma;
  u(n - 1) = off;
  Vec y = tridiag_solve(dmod, off, rhs);
  Vec z = tridiag_solve(dmod, off, u);
  const double frac = (y(0) + off * y(n - 1) / gamma) / (1.0 + z(0) + off * z(n - 1) / gamma);
  return y - frac * z;
}

/// Ground eigenpair by inverse iteration with a fixed Gershgorin shift.
/// The shifted systems are tridiagonal (plus corners), so each step is O(n).
std::pair<double, Vec> ground_state(const GridOperator& op, const Vec* warm = nullptr) {
  const Index n = op.size();
  const double sigma = op.diagonal().minCoeff() - 2.0 * op.inv_h2() - 1.0;  // below the spectrum
  const double amax = op.diagonal().cwiseAbs().maxCoeff() + 2.0 * op.inv_h2();
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * amax;

  Vec x = (warm != nullptr) ? warm->normalized() : Vec::Ones(n).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    x = shifted_solve(op, sigma, x).normalized();
    Vec ax = op.apply(x);
    lambda = x.dot(ax);
    double resid = (ax - lambda * x).norm();
    if (resid <= std::max(1e-13 * (std::abs(lambda) + 1.0), floor)) return {lambda, x};
  }
  throw std::runtime_error("solve_hartree: inverse iteration stalled");
}

}  // namespace

HartreeSolution solve_hartree(const GridSpec& grid, const ExternalPotential& vext,
                              const Interaction& v, const ScfParams& params) {
  if (params.mixing <= 0.0 || params.mixing > 1.0)
    throw std::invalid_argument("solve_hartree: mixing must be in (0, 1]");
  if (params.tol <= 0.0) throw std::invalid_argument("solve_hartree: tol must be positive");

  const Vec vext_grid = vext.sample(grid);
  const double sqrt_h = std::sqrt(grid.h);

  HartreeSolution sol;
  Vec phi = initial_guess(grid);
  Vec warm = phi * sqrt_h;  // euclidean-normalized seed, reused across iterations
  double residual = 0.0;
  int iter = 0;
  bool converged = false;

  for (; iter <= params.max_iter; ++iter) {
    Vec density = phi.cwiseProduct(phi);
    Vec mean_field = convolve_density(v, density, grid);
    GridOperator op(grid, vext_grid + mean_field);

    Vec hphi = op.apply(phi);
    double rayleigh = grid.weights.dot(phi.cwiseProduct(hphi));
    residual = weighted_norm(hphi - rayleigh * phi, grid);
    if (residual < params.tol) {
      converged = true;
      break;
    }
    if (iter == params.max_iter) break;

    warm = ground_state(op, &warm).second;
    Vec gs = warm / sqrt_h;  // quadrature-normalized
    if (grid.weights.dot(gs) < 0.0) gs = -gs;

    phi = (1.0 - params.mixing) * phi + params.mixing * gs;
    phi /= weighted_norm(phi, grid);
  }

  // positivity: all entries above the eigensolver noise floor must be positive
  const double floor = 1e-12 * phi.cwiseAbs().maxCoeff();
  for (int i = 0; i < grid.n; ++i) {
    if (phi(i) < -floor)
      throw std::runtime_error("solve_hartree: ground state lost positivity (grid too coarse?)");
  }

  Vec density = phi.cwiseProduct(phi);
  Vec mean_field = convolve_density(v, density, grid);
  GridOperator op(grid, vext_grid + mean_field);
  const double eps0 = ground_state(op, &warm).first;

  GridOperator kin(grid, vext_grid);
  const double h00 = grid.weights.dot(phi.cwiseProduct(kin.apply(phi)));
  const double v0000 = grid.weights.cwiseProduct(density).dot(mean_field);

  sol.phi0 = phi;
  sol.eps0 = eps0;
  sol.kinetic_ext = h00;
  sol.v0000 = v0000;
  sol.hartree_energy = h00 + 0.5 * v0000;
  sol.residual = residual;
  sol.iterations = iter;
  sol.converged = converged;
  sol.boundary_amplitude =
      grid.periodic() ? 0.0 : std::max(std::abs(phi(0)), std::abs(phi(grid.n - 1)));
  return sol;
}

double hartree_functional(const Vec& phi, const GridSpec& grid, const ExternalPotential& vext,
                          const Interaction& v) {
  if (phi.size() != grid.n) throw std::invalid_argument("hartree_functional: length mismatch");
  const double norm = weighted_norm(phi, grid);
  if (std::abs(norm - 1.0) > 1e-8)
    throw std::invalid_argument("hartree_functional: state must be quadrature-normalized");

  GridOperator kin(grid, vext.sample(grid));
  Vec density = phi.cwiseProduct(phi);
  double one_body = grid.weights.dot(phi.cwiseProduct(kin.apply(phi)));
  double two_body = grid.weights.cwiseProduct(density).dot(convolve_density(v, density, grid));
  return one_body + 0.5 * two_body;
}

}  // namespace bogospec
