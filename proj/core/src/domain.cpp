#include "bogospec/domain.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bogospec {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

GridSpec make_box_grid(double half_width, int n) {
  if (n < 8) throw std::invalid_argument("grid: need n >= 8");
  if (half_width <= 0.0) throw std::invalid_argument("grid: need L > 0");
  GridSpec g;
  g.kind = GridKind::dirichlet_box;
  g.n = n;
  g.half_width = half_width;
  g.h = 2.0 * half_width / n;
  g.x.resize(n);
  for (int i = 0; i < n; ++i) g.x(i) = -half_width + (i + 0.5) * g.h;
  g.weights = Vec::Constant(n, g.h);
  return g;
}

GridSpec make_torus_grid(int n) {
  if (n < 8) throw std::invalid_argument("grid: need n >= 8");
  GridSpec g;
  g.kind = GridKind::periodic_torus;
  g.n = n;
  g.half_width = 0.0;
  g.h = 1.0 / n;
  g.x.resize(n);
  for (int i = 0; i < n; ++i) g.x(i) = i * g.h;
  g.weights = Vec::Constant(n, g.h);
  return g;
}

std::array<double, 3> ModeBasis::momentum(std::size_t i) const {
  const auto& k = indices[i];
  return {kTwoPi * k[0], kTwoPi * k[1], kTwoPi * k[2]};
}

double ModeBasis::momentum_sq(std::size_t i) const {
  const auto& k = indices[i];
  double s = 0.0;
  for (int j = 0; j < dim; ++j) s += double(k[j]) * k[j];
  return kTwoPi * kTwoPi * s;
}

ModeBasis make_mode_basis(int dim, int cutoff) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("modes: dimension must be 1, 2 or 3");
  if (cutoff < 1) throw std::invalid_argument("modes: need K >= 1");
  ModeBasis b;
  b.dim = dim;
  b.cutoff = cutoff;
  const int lo[3] = {-cutoff, dim > 1 ? -cutoff : 0, dim > 2 ? -cutoff : 0};
  const int hi[3] = {cutoff, dim > 1 ? cutoff : 0, dim > 2 ? cutoff : 0};
  for (int k0 = lo[0]; k0 <= hi[0]; ++k0)
    for (int k1 = lo[1]; k1 <= hi[1]; ++k1)
      for (int k2 = lo[2]; k2 <= hi[2]; ++k2) b.indices.push_back({k0, k1, k2});
  return b;
}

double Interaction::value(double dx) const {
  switch (kind) {
    case InteractionKind::zero:
      return 0.0;
    case InteractionKind::gaussian:
      return strength * std::exp(-dx * dx / (2.0 * range * range));
    case InteractionKind::cosine_torus:
      return strength * (1.0 + std::cos(kTwoPi * dx));
  }
  return 0.0;
}

double Interaction::torus_value(double dx) const {
  switch (kind) {
    case InteractionKind::zero:
      return 0.0;
    case InteractionKind::cosine_torus:
      return value(dx);  // already 1-periodic
    case InteractionKind::gaussian: {
      // periodize; images beyond ~8 standard deviations are below eps
      int wing = 1 + static_cast<int>(std::ceil(8.0 * range));
      double s = 0.0;
      for (int k = -wing; k <= wing; ++k) s += value(dx + k);
      return s;
    }
  }
  return 0.0;
}

double Interaction::fourier(double p) const {
  switch (kind) {
    case InteractionKind::zero:
      return 0.0;
    case InteractionKind::gaussian:
      // transform of the periodized gaussian on the 2*pi*Z lattice equals the
      // line transform by Poisson summation
      return strength * range * std::sqrt(kTwoPi) * std::exp(-0.5 * range * range * p * p);
    case InteractionKind::cosine_torus: {
      double r = std::abs(p) / kTwoPi;
      if (std::abs(r) < 1e-9) return strength;
      if (std::abs(r - 1.0) < 1e-9) return 0.5 * strength;
      return 0.0;
    }
  }
  return 0.0;
}

double Interaction::fourier(std::span<const double> p) const {
  if (kind == InteractionKind::zero) return 0.0;
  double prod = strength;
  for (double pj : p) {
    switch (kind) {
      case InteractionKind::gaussian:
        prod *= range * std::sqrt(kTwoPi) * std::exp(-0.5 * range * range * pj * pj);
        break;
      case InteractionKind::cosine_torus: {
        double r = std::abs(pj) / kTwoPi;
        if (std::abs(r) < 1e-9)
          prod *= 1.0;
        else if (std::abs(r - 1.0) < 1e-9)
          prod *= 0.5;
        else
          return 0.0;
        break;
      }
      default:
        break;
    }
  }
  return prod;
}

Interaction make_zero_interaction() { return {InteractionKind::zero, 0.0, 0.0}; }

Interaction make_gaussian_interaction(double g, double s) {
  if (g < 0.0) throw std::invalid_argument("interaction: need g >= 0");
  if (s <= 0.0) throw std::invalid_argument("interaction: need s > 0");
  return {InteractionKind::gaussian, g, s};
}

Interaction make_cosine_interaction(double g) {
  if (g < 0.0) throw std::invalid_argument("interaction: need g >= 0");
  return {InteractionKind::cosine_torus, g, 0.0};
}

double ExternalPotential::operator()(double x) const {
  switch (kind) {
    case PotentialKind::none:
      return 0.0;
    case PotentialKind::harmonic:
      return param * param * x * x;
    case PotentialKind::quartic:
      return param * x * x * x * x;
  }
  return 0.0;
}

Vec ExternalPotential::sample(const GridSpec& grid) const {
  Vec out(grid.n);
  for (int i = 0; i < grid.n; ++i) out(i) = (*this)(grid.x(i));
  return out;
}

Mat kernel_matrix(const Interaction& v, const GridSpec& grid) {
  const int n = grid.n;
  Mat K(n, n);
  const bool per = grid.periodic();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b <= a; ++b) {
      double d = grid.x(a) - grid.x(b);
      double val = per ? v.torus_value(d) : v.value(d);
      K(a, b) = val;
      K(b, a) = val;
    }
  }
  return K;
}

Vec convolve_density(const Interaction& v, const Vec& rho, const GridSpec& grid) {
  if (rho.size() != grid.n) throw std::invalid_argument("convolve_density: length mismatch");
  if (v.kind == InteractionKind::zero) return Vec::Zero(grid.n);
  // direct O(n^2) summation; n <= ~1024 at desk scale
  return kernel_matrix(v, grid) * (grid.weights.cwiseProduct(rho));
}

double fourier_coefficient(const Interaction& v, double p) { return v.fourier(p); }

namespace {

PositiveTypeReport report_from(const std::vector<std::pair<double, double>>& coeffs, double v0) {
  PositiveTypeReport rep;
  rep.v0 = v0;
  rep.samples = static_cast<int>(coeffs.size());
  rep.min_coefficient = std::numeric_limits<double>::infinity();
  for (auto [p, c] : coeffs) {
    if (c < rep.min_coefficient) {
      rep.min_coefficient = c;
      rep.at_momentum = p;
    }
  }
  rep.pass = rep.min_coefficient >= -1e-10 * std::abs(v0);
  return rep;
}

}  // namespace

PositiveTypeReport validate_positive_type(const Interaction& v, const GridSpec& grid) {
  // sample the discretization's own dual lattice, where aliasing matters
  const double dual_step = kTwoPi / grid.domain_length();
  std::vector<std::pair<double, double>> coeffs;
  for (int k = -grid.n / 2; k <= grid.n / 2; ++k) {
    double p = k * dual_step;
    coeffs.emplace_back(p, v.fourier(p));
  }
  return report_from(coeffs, v.v0());
}

PositiveTypeReport validate_positive_type(const Vec& v_samples, const GridSpec& grid) {
  if (v_samples.size() != grid.n) throw std::invalid_argument("validate_positive_type: length mismatch");
  const double dual_step = kTwoPi / grid.domain_length();
  std::vector<std::pair<double, double>> coeffs;
  for (int k = -grid.n / 2; k <= grid.n / 2; ++k) {
    double p = k * dual_step;
    double re = 0.0;
    for (int j = 0; j < grid.n; ++j) re += grid.weights(j) * v_samples(j) * std::cos(p * grid.x(j));
    coeffs.emplace_back(p, re);
  }
  return report_from(coeffs, v_samples.cwiseAbs().maxCoeff());
}

double laplacian_symbol(double p, double h) { return 2.0 * (1.0 - std::cos(p * h)) / (h * h); }

}  // namespace bogospec
