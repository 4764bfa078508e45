#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cvqp/errors.hpp"

namespace cvqp {

// Single-mode Gaussian wavepacket in the position quadrature.
//
// `width` is the wavefunction width Delta of
//   psi(q) = (pi Delta^2)^{-1/4} exp(-(q - center)^2 / (2 Delta^2)),
// so the position-measurement variance is width^2 / 2. The vacuum has
// width 1; width = exp(-r) for squeezing parameter r.
struct GaussianMode {
    double center = 0.0;
    double width = 1.0;
};

inline double delta_from_squeezing(double r) { return std::exp(-r); }
inline double squeezing_from_delta(double delta) { return -std::log(delta); }

// Displaced squeezed vacuum encoding a real input x at width delta.
// Throws InvalidWidthError unless delta > 0 (and finite).
GaussianMode encode_mode(double x, double delta);

// Attenuation gate with weight eta = exp(-2r): center -> eta * center,
// width -> |eta| * width (a negative weight is a phase flip of the
// position axis). Throws InvalidWeightError unless 0 < |eta| <= 1;
// eta = 0 is rejected rather than treated as infinite squeezing.
GaussianMode attenuate(const GaussianMode& mode, double eta);

// Unentangled n-mode register; one wavepacket per mode.
class ProductGaussianState {
  public:
    explicit ProductGaussianState(std::vector<GaussianMode> modes);

    const std::vector<GaussianMode>& modes() const noexcept { return modes_; }
    std::size_t size() const noexcept { return modes_.size(); }

  private:
    std::vector<GaussianMode> modes_;
};

// Readout weights and bias. Each weight obeys 0 < |eta_j| <= 1.
class PerceptronConfig {
  public:
    PerceptronConfig(std::vector<double> etas, double bias);

    const std::vector<double>& etas() const noexcept { return etas_; }
    double bias() const noexcept { return bias_; }
    std::size_t n_inputs() const noexcept { return etas_.size(); }

  private:
    std::vector<double> etas_;
    double bias_;
};

// Statistics of the ancilla after attenuating each mode by eta_j, summing
// into the ancilla (CX chain), and displacing by the bias:
//   center = sum_j eta_j x_j + bias,
//   width  = sqrt(sum_j eta_j^2 Delta_j^2).
// Throws ConfigurationError when the mode count differs from n_inputs.
GaussianMode affine_readout(const ProductGaussianState& state, const PerceptronConfig& config);

// Homodyne probability density of a readout mode:
//   P(y) = (pi w^2)^{-1/2} exp(-(y - c)^2 / w^2),
// i.e. a normal density with standard deviation w / sqrt(2).
double homodyne_density(const GaussianMode& readout, double y);

} // namespace cvqp
