#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "cvqp/errors.hpp"
#include "cvqp/gaussian.hpp"
#include "cvqp/measurement.hpp"
#include "cvqp/oracle_grid.hpp"
#include "cvqp/superposition.hpp"
#include "doctest.h"

using cvqp::build_wavefunction;
using cvqp::GaussianMode;
using cvqp::GridSpec;
using cvqp::GridWavefunction2;
using cvqp::oracle_readout_distribution;
using cvqp::PerceptronConfig;
using cvqp::ProductGaussianState;
using cvqp::ReadoutHistogram;
using cvqp::SuperposedGaussianState;
using cvqp::symmetric_superposition;

namespace {

double grid_norm(const GridWavefunction2& psi) {
    const double h = psi.spec().step();
    double acc = 0.0;
    for (double a : psi.amplitudes()) {
        acc += a * a;
    }
    return acc * h * h;
}

double total_mass(const ReadoutHistogram& hist) {
    double acc = 0.0;
    for (double m : hist.mass) {
        acc += m;
    }
    return acc;
}

double mass_in_window(const ReadoutHistogram& hist, double lo, double hi) {
    double acc = 0.0;
    for (std::size_t k = 0; k < hist.mass.size(); ++k) {
        const double c = hist.center(k);
        if (c >= lo && c <= hi) {
            acc += hist.mass[k];
        }
    }
    return acc;
}

struct Moments {
    double mean;
    double variance;
};

Moments histogram_moments(const ReadoutHistogram& hist) {
    double mean = 0.0;
    for (std::size_t k = 0; k < hist.mass.size(); ++k) {
        mean += hist.mass[k] * hist.center(k);
    }
    double var = 0.0;
    for (std::size_t k = 0; k < hist.mass.size(); ++k) {
        const double d = hist.center(k) - mean;
        var += hist.mass[k] * d * d;
    }
    return {mean, var};
}

}  // namespace

TEST_SUITE("oracle-grid") {

TEST_CASE("grid construction enforces resolution and coverage") {
    CHECK_THROWS_AS(build_wavefunction(
                        ProductGaussianState({GaussianMode{0.0, 1.0}, GaussianMode{0.0, 1.0}}),
                        GridSpec{12.0, 32}),
                    cvqp::ConfigurationError);
    // A center 8 widths from the boundary is the limit; 5 + 8 > 12 fails.
    CHECK_THROWS_AS(build_wavefunction(
                        ProductGaussianState({GaussianMode{5.0, 1.0}, GaussianMode{0.0, 1.0}}),
                        GridSpec{12.0, 2048}),
                    cvqp::CoverageError);
    CHECK_THROWS_AS(build_wavefunction(
                        ProductGaussianState({GaussianMode{0.0, 1.0}}),
                        GridSpec{12.0, 2048}),
                    cvqp::ConfigurationError);
}

TEST_CASE("two-mode vacuum peaks at 1/sqrt(pi) and normalizes on the grid") {
    const GridWavefunction2 psi = build_wavefunction(
        ProductGaussianState({GaussianMode{0.0, 1.0}, GaussianMode{0.0, 1.0}}),
        GridSpec{12.0, 2048});
    CHECK(psi.raw_norm_error() <= 1e-9);
    CHECK(std::fabs(grid_norm(psi) - 1.0) <= 1e-12);
    const double peak = *std::max_element(psi.amplitudes().begin(), psi.amplitudes().end());
    CHECK(std::fabs(peak - 1.0 / std::sqrt(3.141592653589793238462643383280)) <= 1e-4);
}

TEST_CASE("displaced product states normalize on the grid") {
    const GridWavefunction2 psi = build_wavefunction(
        ProductGaussianState({GaussianMode{1.0, 1.0}, GaussianMode{-1.0, 1.0}}),
        GridSpec{12.0, 2048});
    CHECK(psi.raw_norm_error() <= 1e-9);
}

TEST_CASE("superposed states normalize through the analytic norm constant") {
    const GridWavefunction2 psi = build_wavefunction(
        symmetric_superposition(1.0, -1.0, std::exp(-1.0)), GridSpec{12.0, 2048});
    CHECK(psi.raw_norm_error() <= 1e-9);
    CHECK(std::fabs(grid_norm(psi) - 1.0) <= 1e-12);
}

TEST_CASE("a deliberately coarse grid breaches the normalization tolerance") {
    const GridWavefunction2 psi = build_wavefunction(
        symmetric_superposition(1.0, -1.0, std::exp(-1.0)), GridSpec{12.0, 64});
    CHECK(psi.raw_norm_error() > 1e-9);
}

TEST_CASE("histogram of the both-low conjunction row has mean -3 and unit variance") {
    const GridWavefunction2 psi = build_wavefunction(
        ProductGaussianState({GaussianMode{-1.0, 1.0}, GaussianMode{-1.0, 1.0}}),
        GridSpec{12.0, 2048});
    const ReadoutHistogram hist = oracle_readout_distribution(psi, {1.0, 1.0}, -1.0);
    CHECK(std::fabs(total_mass(hist) - 1.0) <= 1e-9);
    const Moments m = histogram_moments(hist);
    CHECK(std::fabs(m.mean + 3.0) <= 1e-6);
    CHECK(std::fabs(m.variance - 1.0) <= 1e-6);
}

TEST_CASE("readout weights obey the attenuation contract") {
    const GridWavefunction2 psi = build_wavefunction(
        ProductGaussianState({GaussianMode{0.0, 1.0}, GaussianMode{0.0, 1.0}}),
        GridSpec{12.0, 256});
    CHECK_THROWS_AS(oracle_readout_distribution(psi, {1.0, 1.5}, 0.0),
                    cvqp::InvalidWeightError);
    CHECK_THROWS_AS(oracle_readout_distribution(psi, {0.0, 1.0}, 0.0),
                    cvqp::InvalidWeightError);
    CHECK_THROWS_AS(oracle_readout_distribution(psi, {1.0, 1.0}, 0.0, 64),
                    cvqp::ConfigurationError);
    // Fractional weights are valid; they select the coarse fallback layout.
    const ReadoutHistogram hist = oracle_readout_distribution(psi, {1.0, 0.5}, 0.0);
    CHECK(hist.mass.size() == 1024);
    CHECK(std::fabs(total_mass(hist) - 1.0) <= 1e-9);
}

TEST_CASE("histogram density matches the closed-form readout for random sign weights") {
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> center(-2.0, 2.0);
    std::uniform_real_distribution<double> width(std::exp(-1.0), 1.0);
    std::uniform_real_distribution<double> bias(-2.0, 2.0);
    std::bernoulli_distribution flip(0.5);
    for (int rep = 0; rep < 5; ++rep) {
        const GaussianMode m1{center(gen), width(gen)};
        const GaussianMode m2{center(gen), width(gen)};
        const std::array<double, 2> etas{flip(gen) ? -1.0 : 1.0, flip(gen) ? -1.0 : 1.0};
        const double b = bias(gen);
        const GridWavefunction2 psi =
            build_wavefunction(ProductGaussianState({m1, m2}), GridSpec{12.0, 2048});
        const ReadoutHistogram hist = oracle_readout_distribution(psi, etas, b);
        const GaussianMode readout = cvqp::affine_readout(
            ProductGaussianState({m1, m2}), PerceptronConfig{{etas[0], etas[1]}, b});
        double worst = 0.0;
        for (std::size_t k = 0; k < hist.mass.size(); ++k) {
            worst = std::max(worst, std::fabs(hist.density(k) -
                                              cvqp::homodyne_density(readout, hist.center(k))));
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("histogram density matches the parity mixture for superposed inputs") {
    std::mt19937_64 gen(43);
    std::uniform_real_distribution<double> center(-1.5, 1.5);
    std::uniform_real_distribution<double> width(std::exp(-1.0), 1.0);
    std::uniform_real_distribution<double> bias(-2.0, 2.0);
    for (int rep = 0; rep < 3; ++rep) {
        const double x1 = center(gen);
        const double x2 = center(gen);
        const double d = width(gen);
        const double b = bias(gen);
        const SuperposedGaussianState state = symmetric_superposition(x1, x2, d);
        const GridWavefunction2 psi = build_wavefunction(state, GridSpec{12.0, 2048});
        const ReadoutHistogram hist = oracle_readout_distribution(psi, {1.0, -1.0}, b);
        const cvqp::GaussianMixture mix = cvqp::xor_homodyne_mixture(state, {1.0, -1.0}, b);
        double worst = 0.0;
        for (std::size_t k = 0; k < hist.mass.size(); ++k) {
            worst = std::max(worst,
                             std::fabs(hist.density(k) - mix.density(hist.center(k))));
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("explicit coarse bins average the density; the bias stays second order") {
    const GridWavefunction2 psi = build_wavefunction(
        ProductGaussianState({GaussianMode{1.0, std::exp(-1.0)},
                              GaussianMode{-1.0, std::exp(-1.0)}}),
        GridSpec{12.0, 2048});
    const ReadoutHistogram hist = oracle_readout_distribution(psi, {1.0, 1.0}, -1.0, 1024);
    CHECK(hist.mass.size() == 1024);
    CHECK(std::fabs(total_mass(hist) - 1.0) <= 1e-9);
    const GaussianMode readout = cvqp::affine_readout(
        ProductGaussianState({GaussianMode{1.0, std::exp(-1.0)},
                              GaussianMode{-1.0, std::exp(-1.0)}}),
        PerceptronConfig{{1.0, 1.0}, -1.0});
    double worst = 0.0;
    for (std::size_t k = 0; k < hist.mass.size(); ++k) {
        worst = std::max(worst, std::fabs(hist.density(k) -
                                          cvqp::homodyne_density(readout, hist.center(k))));
    }
    // Bin-averaging a curved density carries an O(bin_width^2 rho'') offset;
    // for this narrowest experimental width that bound is ~7e-4.
    CHECK(worst <= 2e-3);
}

TEST_CASE("tail mass left of zero agrees with the closed-form error probability") {
    const GaussianMode m1{1.0, std::exp(-1.0)};
    const GaussianMode m2{1.0, std::exp(-1.0)};
    const GridWavefunction2 psi =
        build_wavefunction(ProductGaussianState({m1, m2}), GridSpec{12.0, 2048});
    const ReadoutHistogram hist = oracle_readout_distribution(psi, {1.0, 1.0}, -1.0);
    double tail = 0.0;
    double straddle = 0.0;
    for (std::size_t k = 0; k < hist.mass.size(); ++k) {
        if (hist.center(k) <= 0.0) {
            tail += hist.mass[k];
        }
        if (std::fabs(hist.center(k)) <= hist.bin_width) {
            straddle = std::max(straddle, hist.mass[k]);
        }
    }
    const cvqp::GaussianMixture mix = cvqp::GaussianMixture::from_readout(
        cvqp::affine_readout(ProductGaussianState({m1, m2}),
                             PerceptronConfig{{1.0, 1.0}, -1.0}));
    const double p = cvqp::prob_error(mix, cvqp::Polarity::positive);
    CHECK(std::fabs(tail - p) <= 1e-5 + straddle);
}

TEST_CASE("narrow superposed inputs put half the mass at each effective outcome") {
    const GridWavefunction2 psi = build_wavefunction(
        symmetric_superposition(1.0, -1.0, 0.05), GridSpec{12.0, 2048});
    const ReadoutHistogram hist = oracle_readout_distribution(psi, {1.0, -1.0}, -1.0);
    CHECK(std::fabs(mass_in_window(hist, 0.0, 2.0) - 0.5) <= 1e-3);
    CHECK(std::fabs(mass_in_window(hist, -4.0, -2.0) - 0.5) <= 1e-3);
}

TEST_CASE("histogram accumulation is deterministic across repeated runs") {
    const GridWavefunction2 psi = build_wavefunction(
        ProductGaussianState({GaussianMode{0.7, 0.6}, GaussianMode{-0.3, 0.9}}),
        GridSpec{12.0, 2048});
    const ReadoutHistogram a = oracle_readout_distribution(psi, {1.0, -1.0}, -1.0);
    const ReadoutHistogram b = oracle_readout_distribution(psi, {1.0, -1.0}, -1.0);
    REQUIRE(a.mass.size() == b.mass.size());
    CHECK(a.lo == b.lo);
    CHECK(a.bin_width == b.bin_width);
    for (std::size_t k = 0; k < a.mass.size(); ++k) {
        CHECK(a.mass[k] == b.mass[k]);
    }
}

TEST_CASE("the Gaussian convolution identity holds on a fine quadrature grid") {
    CHECK(cvqp::convolution_identity_check(0.0, 1.0, 0.0, 1.0, 0.0) <= 1e-8);
    // Equal widths: the composite keeps the closed form with doubled variance.
    CHECK(cvqp::convolution_identity_check(0.4, 0.7, -0.2, 0.7, 1.0) <= 1e-8);
    std::mt19937_64 gen(47);
    std::uniform_real_distribution<double> shift(-2.0, 2.0);
    std::uniform_real_distribution<double> var(0.1, 2.0);
    for (int i = 0; i < 10; ++i) {
        CHECK(cvqp::convolution_identity_check(shift(gen), var(gen), shift(gen), var(gen),
                                               shift(gen)) <= 1e-8);
    }
    CHECK_THROWS_AS(cvqp::convolution_identity_check(0.0, -1.0, 0.0, 1.0, 0.0),
                    cvqp::ConfigurationError);
}

}  // TEST_SUITE
