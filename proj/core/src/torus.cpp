#include "bogospec/torus.hpp"

#include <cmath>
#include <stdexcept>

namespace bogospec {

namespace {

double dispersion_from_psq(double psq, double vhat_p) {
  if (vhat_p < 0.0) throw std::invalid_argument("torus_dispersion: v-hat must be nonnegative");
  return std::sqrt(psq * psq + 2.0 * psq * vhat_p);
}

}  // namespace

double torus_dispersion(double p, double vhat_p) { return dispersion_from_psq(p * p, vhat_p); }

TorusSpectrum torus_spectrum(const ModeBasis& basis,
                             const std::function<double(std::span<const double>)>& vhat,
                             std::optional<int> stencil_n) {
  TorusSpectrum out;
  out.basis = basis;
  out.vhat.reserve(basis.size());
  out.e.reserve(basis.size());
  out.trace_sum = 0.0;

  const double h = stencil_n ? 1.0 / *stencil_n : 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto p = basis.momentum(i);
    double psq = 0.0;
    for (int j = 0; j < basis.dim; ++j)
      psq += stencil_n ? laplacian_symbol(p[j], h) : p[j] * p[j];
    const double vh = vhat(std::span<const double>(p.data(), basis.dim));
    const double ep = dispersion_from_psq(psq, vh);
    out.vhat.push_back(vh);
    out.e.push_back(ep);
    out.trace_sum += psq + vh - ep;  // p = 0 contributes v-hat(0)
  }
  return out;
}

TorusSpectrum torus_spectrum(const ModeBasis& basis, const Interaction& v,
                             std::optional<int> stencil_n) {
  return torus_spectrum(
      basis, [&v](std::span<const double> p) { return v.fourier(p); }, stencil_n);
}

}  // namespace bogospec
