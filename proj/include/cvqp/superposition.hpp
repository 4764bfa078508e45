#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "cvqp/gaussian.hpp"

namespace cvqp {

// |<a|b>| for two single-mode wavepackets:
//   sqrt(2 Da Db / (Da^2 + Db^2)) * exp(-(xa - xb)^2 / (2 (Da^2 + Db^2))),
// which reduces to exp(-(xa - xb)^2 / (4 D^2)) at equal widths.
double gaussian_overlap(const GaussianMode& a, const GaussianMode& b);

// One weighted Gaussian of a mixture density; `std_dev` is the measured
// standard deviation (width / sqrt(2) of the underlying mode).
struct MixtureComponent {
    double weight = 1.0;
    double mean = 0.0;
    double std_dev = 1.0;
};

// Finite Gaussian mixture in canonical form: components sorted by mean
// ascending, exact (mean, std) ties merged by weight addition. Weights are
// nonnegative and must sum to 1 within 1e-12; stds are positive.
class GaussianMixture {
  public:
    explicit GaussianMixture(std::vector<MixtureComponent> components);

    // Single-component mixture equivalent to homodyne_density(readout).
    static GaussianMixture from_readout(const GaussianMode& readout);

    const std::vector<MixtureComponent>& components() const noexcept { return components_; }
    double density(double y) const;

  private:
    std::vector<MixtureComponent> components_;
};

// Unnormalized branches b_i with real coefficients c_i; the physical state is
// (1 / sqrt(C)) sum_i c_i |b_i>, with C = sum_ij c_i c_j <b_i|b_j> computed
// from pairwise products of single-mode overlaps. All branches must hold the
// same number of modes. The general k-branch type is representable; closed
// measurement statistics are provided for the two-branch symmetric case only.
class SuperposedGaussianState {
  public:
    struct Branch {
        double coefficient;
        ProductGaussianState state;
    };

    explicit SuperposedGaussianState(std::vector<Branch> branches);

    const std::vector<Branch>& branches() const noexcept { return branches_; }
    double norm_constant() const noexcept { return norm_constant_; }
    std::size_t mode_count() const noexcept { return branches_.front().state.size(); }

  private:
    std::vector<Branch> branches_;
    double norm_constant_;
};

// Symmetric two-mode superposition (|x1,D>|x2,D> + |x2,D>|x1,D>) / sqrt(C)
// with C = 2 (1 + exp(-(x1 - x2)^2 / (2 delta^2))). Throws InvalidWidthError
// unless delta > 0.
SuperposedGaussianState symmetric_superposition(double x1, double x2, double delta);

// Homodyne statistics of the two-input parity circuit applied to a symmetric
// superposition: weights eta = (1, -1) exactly (any other value is a
// ConfigurationError), ancilla displaced by `bias`. The density is the
// three-component mixture
//   (1/C) N(bias + x1 - x2, s) + (1/C) N(bias + x2 - x1, s) + (2g/C) N(bias, s)
// with s = sqrt((D1^2 + D2^2) / 2), g the product of the per-slot branch
// overlaps, and C the state's norm constant. Branches may carry unequal
// per-slot widths; both branches must be center-swaps of each other.
GaussianMixture xor_homodyne_mixture(const SuperposedGaussianState& state,
                                     std::array<double, 2> etas, double bias);

} // namespace cvqp
