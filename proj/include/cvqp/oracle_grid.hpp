#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "cvqp/superposition.hpp"

namespace cvqp {

// Uniform midpoint grid on [-half_extent, half_extent] with `points` samples
// per axis at positions q_i = -L + (i + 0.5) h, h = 2L / points. Requires
// points >= 64. The extent must cover every wavepacket center by at least
// 8 widths (checked at build time; CoverageError otherwise).
struct GridSpec {
    double half_extent = 12.0;
    std::size_t points = 2048;

    double step() const noexcept { return 2.0 * half_extent / static_cast<double>(points); }
    double position(std::size_t i) const noexcept {
        return -half_extent + (static_cast<double>(i) + 0.5) * step();
    }
};

// Real-valued two-mode wavefunction sampled on the grid, row-major:
// amplitudes[i * N + j] = psi(q1_i, q2_j). Amplitudes are renormalized so the
// grid norm sum |psi|^2 h^2 is 1; `raw_norm_error` records how far the
// analytically normalized input was from 1 before that correction (a check
// on both the norm constant and the grid resolution; <= 1e-9 at defaults).
class GridWavefunction2 {
  public:
    GridWavefunction2(GridSpec spec, std::vector<double> amplitudes, double raw_norm_error);

    const GridSpec& spec() const noexcept { return spec_; }
    const std::vector<double>& amplitudes() const noexcept { return amplitudes_; }
    double raw_norm_error() const noexcept { return raw_norm_error_; }

  private:
    GridSpec spec_;
    std::vector<double> amplitudes_;
    double raw_norm_error_;
};

// Samples a two-mode product state. Throws ConfigurationError unless the
// state has exactly two modes; CoverageError on inadequate extent.
GridWavefunction2 build_wavefunction(const ProductGaussianState& state, const GridSpec& spec);

// Samples a two-mode superposition, including the 1/sqrt(C) normalization.
GridWavefunction2 build_wavefunction(const SuperposedGaussianState& state, const GridSpec& spec);

// Readout histogram over y; masses sum to 1 (every grid cell lands in a bin).
struct ReadoutHistogram {
    double lo = 0.0;        // left edge of bin 0
    double bin_width = 0.0;
    std::vector<double> mass;

    double center(std::size_t k) const noexcept {
        return lo + (static_cast<double>(k) + 0.5) * bin_width;
    }
    double density(std::size_t k) const noexcept { return mass[k] / bin_width; }
};

// Brute-force readout distribution: the attenuate -> CX -> displace chain is
// folded into the accumulation map, adding each cell's probability
// |psi|^2 h^2 to the bin containing eta1 q1 + eta2 q2 + bias. No intermediate
// transformed arrays and no resampling.
//
// bins = 0 selects the automatic layout: when |eta1| = |eta2| = 1 the cell
// values fall on a lattice of step h and the histogram uses one bin per
// lattice value (2N - 1 bins centered on it), making mass / bin_width a
// whole-line trapezoid sample of the exact marginal density (spectrally
// accurate for Gaussian inputs). Fractional weights fall back to 1024 bins.
// Explicit bin counts must be >= 128. Weights follow the attenuation
// contract: eta = 0 or |eta| > 1 is an InvalidWeightError.
ReadoutHistogram oracle_readout_distribution(const GridWavefunction2& psi,
                                             std::array<double, 2> etas, double bias,
                                             std::size_t bins = 0);

// Max absolute deviation, over a sweep of y, between the numerically
// integrated Gaussian convolution
//   integral dx exp(-(y - x - a)^2 / b) exp(-(x - z - c)^2 / d)
// and its closed form sqrt(pi / (1/b + 1/d)) exp(-(y - a - c - z)^2 / (b + d)).
// Requires b > 0 and d > 0.
double convolution_identity_check(double a, double b, double c, double d, double z);

} // namespace cvqp
