#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bogospec/types.hpp"

namespace bogospec {

enum class GridKind { dirichlet_box, periodic_torus };

/// Uniform 1D quadrature grid. The box uses cell-centered nodes on [-L, L]
/// with the wavefunction pinned to zero outside; the torus is [0,1) with
/// periodic wrap. Weights are uniform h in both cases, so they sum to the
/// domain length exactly.
struct GridSpec {
  GridKind kind;
  int n = 0;
  double half_width = 0.0;  // L; unused for the torus
  double h = 0.0;
  Vec x;
  Vec weights;

  double domain_length() const { return kind == GridKind::periodic_torus ? 1.0 : 2.0 * half_width; }
  bool periodic() const { return kind == GridKind::periodic_torus; }
};

GridSpec make_box_grid(double half_width, int n);
GridSpec make_torus_grid(int n);

/// Plane-wave momenta p in (2*pi*Z)^d with |p_j| <= 2*pi*K, lexicographic.
struct ModeBasis {
  int dim = 1;
  int cutoff = 1;
  std::vector<std::array<int, 3>> indices;  // p = 2*pi*index

  std::size_t size() const { return indices.size(); }
  std::array<double, 3> momentum(std::size_t i) const;
  double momentum_sq(std::size_t i) const;
};

ModeBasis make_mode_basis(int dim, int cutoff);

enum class InteractionKind { zero, gaussian, cosine_torus };

/// Two-body potential v(x-y), nonnegative and of positive type.
///   gaussian(g,s):   v(x) = g exp(-x^2 / (2 s^2))
///   cosine_torus(g): v(x) = g (1 + cos 2*pi*x)  (per component for d>1)
struct Interaction {
  InteractionKind kind = InteractionKind::zero;
  double strength = 0.0;  // g
  double range = 0.0;     // s (gaussian only)

  double value(double dx) const;        // on the line
  double torus_value(double dx) const;  // periodized to the unit torus
  double v0() const { return kind == InteractionKind::cosine_torus ? 2.0 * strength : strength; }
  /// Analytic transform v-hat(p); exact on the torus lattice p in 2*pi*Z.
  double fourier(double p) const;
  double fourier(std::span<const double> p) const;  // product rule, d <= 3
};

Interaction make_zero_interaction();
Interaction make_gaussian_interaction(double g, double s);
Interaction make_cosine_interaction(double g);

enum class PotentialKind { none, harmonic, quartic };

/// Confinement V_ext; harmonic(omega) = omega^2 x^2, quartic(kappa) = kappa x^4.
struct ExternalPotential {
  PotentialKind kind = PotentialKind::none;
  double param = 0.0;

  double operator()(double x) const;
  Vec sample(const GridSpec& grid) const;
};

/// v(x_a - x_b) on the grid (periodized on the torus). Exactly symmetric.
Mat kernel_matrix(const Interaction& v, const GridSpec& grid);

/// (v * rho)(x_i) = sum_j w_j v(x_i - x_j) rho(x_j).
Vec convolve_density(const Interaction& v, const Vec& rho, const GridSpec& grid);

/// Exact v-hat(p) for supported kinds; p on the discretization's dual lattice
/// is where the positive-type validation samples.
double fourier_coefficient(const Interaction& v, double p);

struct PositiveTypeReport {
  bool pass = false;
  double min_coefficient = 0.0;
  double at_momentum = 0.0;
  double v0 = 0.0;
  int samples = 0;
};

PositiveTypeReport validate_positive_type(const Interaction& v, const GridSpec& grid);
/// Sample-based variant: quadrature DFT of arbitrary grid samples of v.
PositiveTypeReport validate_positive_type(const Vec& v_samples, const GridSpec& grid);

/// Symbol of the 3-point Laplacian stencil: 2(1 - cos(p h)) / h^2.
double laplacian_symbol(double p, double h);

}  // namespace bogospec
