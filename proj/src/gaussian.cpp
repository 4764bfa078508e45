#include "cvqp/gaussian.hpp"

#include <cmath>
#include <string>

namespace cvqp {

GaussianMode encode_mode(double x, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw InvalidWidthError("mode width must be a positive finite real, got " +
                                std::to_string(delta));
    }
    if (!std::isfinite(x)) {
        throw InvalidWidthError("mode center must be finite");
    }
    return GaussianMode{x, delta};
}

GaussianMode attenuate(const GaussianMode& mode, double eta) {
    const double mag = std::fabs(eta);
    if (!(mag > 0.0) || mag > 1.0 || !std::isfinite(eta)) {
        throw InvalidWeightError("attenuation weight must satisfy 0 < |eta| <= 1, got " +
                                 std::to_string(eta));
    }
    return GaussianMode{eta * mode.center, mag * mode.width};
}

ProductGaussianState::ProductGaussianState(std::vector<GaussianMode> modes)
    : modes_(std::move(modes)) {
    if (modes_.empty()) {
        throw ConfigurationError("product state needs at least one mode");
    }
    for (const GaussianMode& m : modes_) {
        if (!(m.width > 0.0) || !std::isfinite(m.width) || !std::isfinite(m.center)) {
            throw InvalidWidthError("product state holds a mode with nonpositive width");
        }
    }
}

PerceptronConfig::PerceptronConfig(std::vector<double> etas, double bias)
    : etas_(std::move(etas)), bias_(bias) {
    if (etas_.empty()) {
        throw ConfigurationError("readout needs at least one weight");
    }
    if (!std::isfinite(bias_)) {
        throw ConfigurationError("bias must be finite");
    }
    for (double eta : etas_) {
        const double mag = std::fabs(eta);
        if (!(mag > 0.0) || mag > 1.0 || !std::isfinite(eta)) {
            throw InvalidWeightError("readout weight must satisfy 0 < |eta| <= 1, got " +
                                     std::to_string(eta));
        }
    }
}

GaussianMode affine_readout(const ProductGaussianState& state, const PerceptronConfig& config) {
    if (state.size() != config.n_inputs()) {
        throw ConfigurationError("readout expects " + std::to_string(config.n_inputs()) +
                                 " modes, state holds " + std::to_string(state.size()));
    }
    double center = config.bias();
    double var = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        const double eta = config.etas()[j];
        const GaussianMode& m = state.modes()[j];
        center += eta * m.center;
        var += eta * eta * m.width * m.width;
    }
    return GaussianMode{center, std::sqrt(var)};
}

double homodyne_density(const GaussianMode& readout, double y) {
    const double w2 = readout.width * readout.width;
    const double d = y - readout.center;
    return std::exp(-d * d / w2) / std::sqrt(3.141592653589793238462643383280 * w2);
}

} // namespace cvqp
