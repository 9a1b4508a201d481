#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bogospec/domain.hpp"

namespace bogospec {

/// Closed-form translation-invariant spectrum: no discretization, evaluated
/// directly from v-hat. Ground truth for the general pipeline.
struct TorusSpectrum {
  ModeBasis basis;
  std::vector<double> vhat;  // per mode
  std::vector<double> e;     // per mode, e_0 = 0
  double trace_sum = 0.0;    // includes the p = 0 term v-hat(0)
};

/// e_p = sqrt(p^4 + 2 p^2 v-hat(p)); exactly p^2 when v-hat vanishes.
double torus_dispersion(double p, double vhat_p);

/// Full map over the mode lattice. When stencil_n is given, p^2 is replaced
/// by the discrete-Laplacian symbol on an n-point grid (comparison mode that
/// separates discretization error from pipeline error).
TorusSpectrum torus_spectrum(const ModeBasis& basis, const Interaction& v,
                             std::optional<int> stencil_n = std::nullopt);
TorusSpectrum torus_spectrum(const ModeBasis& basis,
                             const std::function<double(std::span<const double>)>& vhat,
                             std::optional<int> stencil_n = std::nullopt);

}  // namespace bogospec
