// Test-local numerical cross-checks. Everything here is deliberately
// independent of the library's closed forms: plain quadrature and discrete
// convolution on dense lattices, accurate but slow. Used only by tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace testoracle {

// Midpoint-rule integral of f over [lo, hi] with n panels. For smooth
// integrands that decay to ~0 at both ends (every density in this test
// suite), equally spaced quadrature converges spectrally, so a few thousand
// panels reach ~1e-14 absolute error.
inline double integrate(const std::function<double(double)>& f, double lo, double hi,
                        std::size_t n = 8192) {
    const double h = (hi - lo) / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += f(lo + (static_cast<double>(i) + 0.5) * h);
    }
    return acc * h;
}

// Probability mass of N(mean, std) on {y <= 0}, by composite Simpson over
// [mean - 13 std, 0]. The integrand does not vanish at the 0 endpoint, so
// the spectral midpoint argument fails there; Simpson's O(h^4) error with
// 32768 panels keeps the truncated-endpoint bias below ~1e-16. Left-end
// truncation error is below 3e-37; useful down to masses of roughly 1e-30.
inline double normal_mass_nonpositive(double mean, double std_dev, std::size_t n = 32768) {
    const double lo = mean - 13.0 * std_dev;
    if (lo >= 0.0) {
        return 0.0;
    }
    const double inv = 1.0 / (std_dev * std::sqrt(2.0 * std::numbers::pi));
    const auto f = [&](double y) {
        const double t = (y - mean) / std_dev;
        return inv * std::exp(-0.5 * t * t);
    };
    const double h = (0.0 - lo) / static_cast<double>(n);
    double acc = f(lo) + f(0.0);
    for (std::size_t i = 1; i < n; ++i) {
        acc += f(lo + static_cast<double>(i) * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

struct WeightedNormal {
    double weight;
    double mean;
    double std_dev;
};

inline double mixture_mass_nonpositive(const std::vector<WeightedNormal>& comps) {
    double acc = 0.0;
    for (const auto& c : comps) {
        acc += c.weight * normal_mass_nonpositive(c.mean, c.std_dev);
    }
    return acc;
}

// Density samples on a uniform lattice: value density[i] at lo + i * step.
struct LatticeDensity {
    double lo = 0.0;
    double step = 0.0;
    std::vector<double> density;

    double position(std::size_t i) const { return lo + static_cast<double>(i) * step; }
};

// Brute-force readout oracle for product-Gaussian inputs with any number of
// modes and any nonzero weights: the measured observable is
//   y = sum_j eta_j q_j + bias,  q_j ~ Normal(x_j, delta_j^2 / 2) independently,
// so its density is the convolution of the per-mode scaled densities shifted
// by the bias. Each factor is sampled on a shared lattice (step chosen well
// below the narrowest factor) and folded in by direct discrete convolution of
// mass arrays, which for Gaussians is spectrally accurate.
inline LatticeDensity convolved_readout_density(const std::vector<double>& centers,
                                                const std::vector<double>& widths,
                                                const std::vector<double>& etas, double bias) {
    if (centers.size() != widths.size() || centers.size() != etas.size() || centers.empty()) {
        throw std::invalid_argument("mismatched oracle inputs");
    }
    const std::size_t n = centers.size();
    std::vector<double> means(n);
    std::vector<double> stds(n);
    double min_std = 1e300;
    for (std::size_t j = 0; j < n; ++j) {
        means[j] = etas[j] * centers[j];
        stds[j] = std::abs(etas[j]) * widths[j] / std::sqrt(2.0);
        min_std = std::min(min_std, stds[j]);
    }
    const double h = min_std / 24.0;

    // Per-mode mass arrays over +-12 sigma, aligned to a global lattice so the
    // convolution offsets stay integral.
    struct MassArray {
        long lo_index;
        std::vector<double> mass;
    };
    auto sample_mode = [&](double mean, double sd) {
        const long lo_i = static_cast<long>(std::floor((mean - 12.0 * sd) / h));
        const long hi_i = static_cast<long>(std::ceil((mean + 12.0 * sd) / h));
        MassArray out;
        out.lo_index = lo_i;
        out.mass.resize(static_cast<std::size_t>(hi_i - lo_i + 1));
        const double inv = 1.0 / (sd * std::sqrt(2.0 * std::numbers::pi));
        for (std::size_t k = 0; k < out.mass.size(); ++k) {
            const double y = static_cast<double>(lo_i + static_cast<long>(k)) * h;
            const double t = (y - mean) / sd;
            out.mass[k] = inv * std::exp(-0.5 * t * t) * h;
        }
        return out;
    };

    MassArray acc = sample_mode(means[0], stds[0]);
    for (std::size_t j = 1; j < n; ++j) {
        const MassArray next = sample_mode(means[j], stds[j]);
        std::vector<double> folded(acc.mass.size() + next.mass.size() - 1, 0.0);
        for (std::size_t a = 0; a < acc.mass.size(); ++a) {
            const double ma = acc.mass[a];
            if (ma == 0.0) {
                continue;
            }
            for (std::size_t b = 0; b < next.mass.size(); ++b) {
                folded[a + b] += ma * next.mass[b];
            }
        }
        acc.lo_index += next.lo_index;
        acc.mass = std::move(folded);
    }

    LatticeDensity out;
    out.step = h;
    out.lo = static_cast<double>(acc.lo_index) * h + bias;
    out.density.resize(acc.mass.size());
    for (std::size_t k = 0; k < acc.mass.size(); ++k) {
        out.density[k] = acc.mass[k] / h;
    }
    return out;
}

}  // namespace testoracle
