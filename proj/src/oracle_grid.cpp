#include "cvqp/oracle_grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

namespace cvqp {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;
constexpr double kCoverageWidths = 8.0;

void check_coverage(const GridSpec& spec, const GaussianMode& m) {
    if (std::fabs(m.center) + kCoverageWidths * m.width > spec.half_extent) {
        throw CoverageError("grid half-extent " + std::to_string(spec.half_extent) +
                            " does not cover center " + std::to_string(m.center) + " by " +
                            std::to_string(kCoverageWidths) + " widths");
    }
}

void check_spec(const GridSpec& spec) {
    if (spec.points < 64) {
        throw ConfigurationError("grid needs at least 64 points per axis");
    }
    if (!(spec.half_extent > 0.0) || !std::isfinite(spec.half_extent)) {
        throw ConfigurationError("grid half-extent must be positive");
    }
}

// Wavefunction samples of one mode along the grid axis.
std::vector<double> axis_samples(const GridSpec& spec, const GaussianMode& m) {
    const double norm = std::pow(kPi * m.width * m.width, -0.25);
    std::vector<double> f(spec.points);
    for (std::size_t i = 0; i < spec.points; ++i) {
        const double d = (spec.position(i) - m.center) / m.width;
        f[i] = norm * std::exp(-0.5 * d * d);
    }
    return f;
}

GridWavefunction2 finalize(const GridSpec& spec, std::vector<double> amp) {
    const double h = spec.step();
    double sumsq = 0.0;
    for (double v : amp) sumsq += v * v;
    const double norm = sumsq * h * h;
    const double raw_err = std::fabs(norm - 1.0);
    const double scale = 1.0 / std::sqrt(norm);
    for (double& v : amp) v *= scale;
    return GridWavefunction2(spec, std::move(amp), raw_err);
}

} // namespace

GridWavefunction2::GridWavefunction2(GridSpec spec, std::vector<double> amplitudes,
                                     double raw_norm_error)
    : spec_(spec), amplitudes_(std::move(amplitudes)), raw_norm_error_(raw_norm_error) {
    if (amplitudes_.size() != spec_.points * spec_.points) {
        throw ConfigurationError("grid amplitude count does not match the spec");
    }
}

GridWavefunction2 build_wavefunction(const ProductGaussianState& state, const GridSpec& spec) {
    check_spec(spec);
    if (state.size() != 2) {
        throw ConfigurationError("grid oracle represents exactly two modes");
    }
    for (const GaussianMode& m : state.modes()) check_coverage(spec, m);
    const std::vector<double> f1 = axis_samples(spec, state.modes()[0]);
    const std::vector<double> f2 = axis_samples(spec, state.modes()[1]);
    const std::size_t n = spec.points;
    std::vector<double> amp(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        double* row = amp.data() + i * n;
        const double a = f1[i];
        for (std::size_t j = 0; j < n; ++j) row[j] = a * f2[j];
    }
    return finalize(spec, std::move(amp));
}

GridWavefunction2 build_wavefunction(const SuperposedGaussianState& state, const GridSpec& spec) {
    check_spec(spec);
    if (state.mode_count() != 2) {
        throw ConfigurationError("grid oracle represents exactly two modes");
    }
    for (const auto& branch : state.branches()) {
        for (const GaussianMode& m : branch.state.modes()) check_coverage(spec, m);
    }
    const std::size_t n = spec.points;
    const double inv_sqrt_c = 1.0 / std::sqrt(state.norm_constant());
    std::vector<double> amp(n * n, 0.0);
    for (const auto& branch : state.branches()) {
        const std::vector<double> f1 = axis_samples(spec, branch.state.modes()[0]);
        const std::vector<double> f2 = axis_samples(spec, branch.state.modes()[1]);
        const double coeff = branch.coefficient * inv_sqrt_c;
        for (std::size_t i = 0; i < n; ++i) {
            double* row = amp.data() + i * n;
            const double a = coeff * f1[i];
            for (std::size_t j = 0; j < n; ++j) row[j] += a * f2[j];
        }
    }
    return finalize(spec, std::move(amp));
}

ReadoutHistogram oracle_readout_distribution(const GridWavefunction2& psi,
                                             std::array<double, 2> etas, double bias,
                                             std::size_t bins) {
    for (double eta : etas) {
        const double mag = std::fabs(eta);
        if (!(mag > 0.0) || mag > 1.0 || !std::isfinite(eta)) {
            throw InvalidWeightError("readout weight must satisfy 0 < |eta| <= 1, got " +
                                     std::to_string(eta));
        }
    }
    const GridSpec& spec = psi.spec();
    const std::size_t n = spec.points;
    const double h = spec.step();
    const bool unit_weights = std::fabs(etas[0]) == 1.0 && std::fabs(etas[1]) == 1.0;

    ReadoutHistogram hist;
    if (bins == 0) {
        if (unit_weights) {
            // Cell values fall on the lattice bias + k h; one bin per value
            // makes mass / bin_width a trapezoid sample of the exact density.
            hist.bin_width = h;
            hist.lo = bias - (2.0 * spec.half_extent - h) - 0.5 * h;
            hist.mass.assign(2 * n - 1, 0.0);
        } else {
            bins = 1024;
        }
    }
    if (hist.mass.empty()) {
        if (bins < 128) {
            throw ConfigurationError("histogram needs at least 128 bins");
        }
        const double reach =
            (std::fabs(etas[0]) + std::fabs(etas[1])) * (spec.half_extent - 0.5 * h);
        const double pad = 0.5 * h * (std::fabs(etas[0]) + std::fabs(etas[1]));
        // The extra half-step offset keeps lattice-aligned cell values (unit
        // weights) centered inside bins instead of on bin boundaries, so bin
        // centers coincide with the centroid of the values they collect.
        hist.lo = bias - reach - pad - 0.5 * h;
        hist.bin_width = 2.0 * (reach + pad) / static_cast<double>(bins);
        hist.mass.assign(bins, 0.0);
    }

    // Deterministic parallel accumulation: the row range is cut into a fixed
    // number of chunks with private partial histograms, merged in chunk
    // order, so the float result does not depend on the thread count.
    const std::size_t n_bins = hist.mass.size();
    const std::size_t chunk_count = 64;
    const std::size_t rows_per_chunk = (n + chunk_count - 1) / chunk_count;
    std::vector<std::vector<double>> partial(chunk_count);
    std::atomic<std::size_t> next{0};
    const double lo = hist.lo;
    const double inv_w = 1.0 / hist.bin_width;
    const double* amp = psi.amplitudes().data();
    const double h2 = h * h;

    auto work = [&]() {
        for (std::size_t c = next.fetch_add(1); c < chunk_count; c = next.fetch_add(1)) {
            std::vector<double>& local = partial[c];
            local.assign(n_bins, 0.0);
            const std::size_t i_end = std::min(n, (c + 1) * rows_per_chunk);
            for (std::size_t i = c * rows_per_chunk; i < i_end; ++i) {
                const double base = etas[0] * spec.position(i) + bias;
                const double* row = amp + i * n;
                for (std::size_t j = 0; j < n; ++j) {
                    const double y = base + etas[1] * spec.position(j);
                    auto k = static_cast<std::ptrdiff_t>((y - lo) * inv_w);
                    if (k < 0) k = 0;
                    if (k >= static_cast<std::ptrdiff_t>(n_bins)) {
                        k = static_cast<std::ptrdiff_t>(n_bins) - 1;
                    }
                    local[static_cast<std::size_t>(k)] += row[j] * row[j] * h2;
                }
            }
        }
    };

    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t n_threads = std::clamp<std::size_t>(hw == 0 ? 1 : hw, 1, 16);
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();
    for (const std::vector<double>& local : partial) {
        if (local.empty()) continue;
        for (std::size_t k = 0; k < n_bins; ++k) hist.mass[k] += local[k];
    }
    return hist;
}

double convolution_identity_check(double a, double b, double c, double d, double z) {
    if (!(b > 0.0) || !(d > 0.0)) {
        throw ConfigurationError("convolution widths must be positive");
    }
    const double closed_scale = std::sqrt(kPi / (1.0 / b + 1.0 / d));
    const double center = a + c + z;
    const double spread = std::sqrt(b + d);
    const double step = 0.1 * std::sqrt(0.5 * std::min(b, d));
    double max_dev = 0.0;
    for (int iy = -80; iy <= 80; ++iy) {
        const double y = center + spread * 0.1 * static_cast<double>(iy);
        // Integrand support: product of Gaussians centered y - a and z + c.
        const double lo = std::min(y - a, z + c) - 10.0 * std::sqrt(std::max(b, d));
        const double hi = std::max(y - a, z + c) + 10.0 * std::sqrt(std::max(b, d));
        const auto steps = static_cast<std::size_t>((hi - lo) / step) + 1;
        double sum = 0.0;
        for (std::size_t i = 0; i <= steps; ++i) {
            const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
            const double u = y - x - a;
            const double v = x - z - c;
            double f = std::exp(-u * u / b - v * v / d);
            if (i == 0 || i == steps) f *= 0.5;
            sum += f;
        }
        sum *= (hi - lo) / static_cast<double>(steps);
        const double w = y - center;
        const double closed = closed_scale * std::exp(-w * w / (b + d));
        max_dev = std::max(max_dev, std::fabs(sum - closed));
    }
    return max_dev;
}

} // namespace cvqp
