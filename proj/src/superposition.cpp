#include "cvqp/superposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cvqp {

namespace {
constexpr double kPi = 3.141592653589793238462643383280;
constexpr double kWeightSumTol = 1e-12;
} // namespace

double gaussian_overlap(const GaussianMode& a, const GaussianMode& b) {
    const double s2 = a.width * a.width + b.width * b.width;
    const double dx = a.center - b.center;
    return std::sqrt(2.0 * a.width * b.width / s2) * std::exp(-dx * dx / (2.0 * s2));
}

GaussianMixture::GaussianMixture(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw ConfigurationError("mixture needs at least one component");
    }
    double sum = 0.0;
    for (const MixtureComponent& c : components_) {
        if (!(c.weight >= 0.0) || !std::isfinite(c.weight)) {
            throw ConfigurationError("mixture weights must be nonnegative");
        }
        if (!(c.std_dev > 0.0) || !std::isfinite(c.std_dev) || !std::isfinite(c.mean)) {
            throw InvalidWidthError("mixture stds must be positive");
        }
        sum += c.weight;
    }
    if (std::fabs(sum - 1.0) > kWeightSumTol) {
        throw ConfigurationError("mixture weights sum to " + std::to_string(sum) +
                                 ", expected 1");
    }
    std::sort(components_.begin(), components_.end(),
              [](const MixtureComponent& l, const MixtureComponent& r) {
                  return l.mean != r.mean ? l.mean < r.mean : l.std_dev < r.std_dev;
              });
    // Merge exact duplicates; equal means with distinct stds stay separate.
    std::vector<MixtureComponent> merged;
    merged.reserve(components_.size());
    for (const MixtureComponent& c : components_) {
        if (!merged.empty() && merged.back().mean == c.mean && merged.back().std_dev == c.std_dev) {
            merged.back().weight += c.weight;
        } else {
            merged.push_back(c);
        }
    }
    components_ = std::move(merged);
}

GaussianMixture GaussianMixture::from_readout(const GaussianMode& readout) {
    return GaussianMixture({MixtureComponent{1.0, readout.center,
                                             readout.width / std::sqrt(2.0)}});
}

double GaussianMixture::density(double y) const {
    double p = 0.0;
    for (const MixtureComponent& c : components_) {
        const double z = (y - c.mean) / c.std_dev;
        p += c.weight * std::exp(-0.5 * z * z) / (c.std_dev * std::sqrt(2.0 * kPi));
    }
    return p;
}

SuperposedGaussianState::SuperposedGaussianState(std::vector<Branch> branches)
    : branches_(std::move(branches)), norm_constant_(0.0) {
    if (branches_.empty()) {
        throw ConfigurationError("superposition needs at least one branch");
    }
    const std::size_t n = branches_.front().state.size();
    for (const Branch& b : branches_) {
        if (b.state.size() != n) {
            throw ConfigurationError("superposition branches must agree on mode count");
        }
        if (!std::isfinite(b.coefficient)) {
            throw ConfigurationError("branch coefficients must be finite");
        }
    }
    // C = sum_ij c_i c_j prod_k <b_i mode k | b_j mode k>.
    for (const Branch& bi : branches_) {
        for (const Branch& bj : branches_) {
            double ov = 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                ov *= gaussian_overlap(bi.state.modes()[k], bj.state.modes()[k]);
            }
            norm_constant_ += bi.coefficient * bj.coefficient * ov;
        }
    }
    if (!(norm_constant_ > 0.0)) {
        throw ConfigurationError("superposition norm constant must be positive");
    }
}

SuperposedGaussianState symmetric_superposition(double x1, double x2, double delta) {
    const GaussianMode a = encode_mode(x1, delta);
    const GaussianMode b = encode_mode(x2, delta);
    return SuperposedGaussianState({
        {1.0, ProductGaussianState({a, b})},
        {1.0, ProductGaussianState({b, a})},
    });
}

GaussianMixture xor_homodyne_mixture(const SuperposedGaussianState& state,
                                     std::array<double, 2> etas, double bias) {
    if (etas[0] != 1.0 || etas[1] != -1.0) {
        throw ConfigurationError("parity readout fixes the weights at (1, -1)");
    }
    if (state.mode_count() != 2) {
        throw ConfigurationError("parity readout expects exactly two modes per branch");
    }
    if (state.branches().size() != 2) {
        throw ConfigurationError("parity readout expects a two-branch superposition");
    }
    const SuperposedGaussianState::Branch& A = state.branches()[0];
    const SuperposedGaussianState::Branch& B = state.branches()[1];
    const GaussianMode& a0 = A.state.modes()[0];
    const GaussianMode& a1 = A.state.modes()[1];
    const GaussianMode& b0 = B.state.modes()[0];
    const GaussianMode& b1 = B.state.modes()[1];
    const bool swapped = A.coefficient == 1.0 && B.coefficient == 1.0 &&
                         a0.width == b0.width && a1.width == b1.width &&
                         a0.center == b1.center && a1.center == b0.center;
    if (!swapped) {
        throw ConfigurationError(
            "parity readout expects the symmetric center-swapped superposition");
    }
    const double x1 = a0.center;
    const double x2 = a1.center;
    const double sigma = std::sqrt((a0.width * a0.width + a1.width * a1.width) / 2.0);
    // Interference weight: product of the per-slot overlaps between branches.
    const double g = gaussian_overlap(a0, b0) * gaussian_overlap(a1, b1);
    const double C = state.norm_constant();
    return GaussianMixture({
        MixtureComponent{1.0 / C, bias + (x1 - x2), sigma},
        MixtureComponent{1.0 / C, bias + (x2 - x1), sigma},
        MixtureComponent{2.0 * g / C, bias, sigma},
    });
}

} // namespace cvqp
