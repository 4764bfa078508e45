#include "cvqp/measurement.hpp"

#include <cmath>

#include "cvqp/rng.hpp"

namespace cvqp {

namespace {
constexpr double kSqrt2 = 1.414213562373095048801688724210;
constexpr double kLnSqrt2Pi = 0.918938533204672741780329736406;
} // namespace

double relu_readout(double y) { return y > 0.0 ? y : 0.0; }

double normal_tail(double z) {
    if (z > 37.5) {
        // erfc underflows here; rebuild from the log-domain series (reaching
        // 0 once the result drops below the subnormal range).
        return std::exp(log_normal_tail(z));
    }
    return 0.5 * std::erfc(z / kSqrt2);
}

double log_normal_tail(double z) {
    if (z < 0.0) {
        // Q(z) = 1 - Q(-z); the complement is well away from 0 here.
        return std::log1p(-normal_tail(-z));
    }
    if (z <= 36.0) {
        // erfc stays in the normal double range until z ~ 37.6; take the log
        // of the exact value as long as that holds.
        return std::log(0.5 * std::erfc(z / kSqrt2));
    }
    // Asymptotic tail: Q(z) = phi(z)/z * (1 - 1/z^2 + 3/z^4 - ...). At the
    // handoff point the truncated term is 10395/z^12 ~ 5e-18 relative.
    const double zi = 1.0 / (z * z);
    const double series =
        1.0 - zi * (1.0 - zi * (3.0 - zi * (15.0 - zi * (105.0 - zi * 945.0))));
    return -0.5 * z * z - std::log(z) - kLnSqrt2Pi + std::log(series);
}

double prob_error(const GaussianMixture& dist, Polarity expected) {
    // Each component's mass split is built from the accurate small tail
    // Q(|mean|/std), so a tiny error probability keeps full relative
    // precision. The larger of the two masses is then replaced by the exact
    // complement of the smaller, which pins p(positive) + p(nonpositive) to
    // exactly 1 in floating point.
    double mass_nonpositive = 0.0; // outcomes y <= 0
    double mass_positive = 0.0;    // outcomes y > 0
    for (const MixtureComponent& c : dist.components()) {
        const double z = c.mean / c.std_dev;
        const double t = normal_tail(std::fabs(z));
        const double far = 1.0 - t;
        mass_nonpositive += c.weight * (z > 0.0 ? t : (z < 0.0 ? far : 0.5));
        mass_positive += c.weight * (z > 0.0 ? far : (z < 0.0 ? t : 0.5));
    }
    double err = expected == Polarity::positive
                     ? (mass_positive < mass_nonpositive ? 1.0 - mass_positive
                                                         : mass_nonpositive)
                     : (mass_nonpositive <= mass_positive ? 1.0 - mass_nonpositive
                                                          : mass_positive);
    if (err > 1.0) err = 1.0;
    if (err < 0.0) err = 0.0;
    return err;
}

std::vector<OutcomeSample> sample_outcomes(const GaussianMixture& dist, std::uint64_t seed,
                                           std::size_t n, std::uint64_t worker) {
    const std::uint64_t stream = stream_seed(seed, worker);
    NormalSampler rng(stream);
    const auto& comps = dist.components();
    std::vector<OutcomeSample> shots;
    shots.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        double cum = 0.0;
        const MixtureComponent* pick = &comps.back();
        for (const MixtureComponent& c : comps) {
            cum += c.weight;
            if (u < cum) {
                pick = &c;
                break;
            }
        }
        const double y = pick->mean + pick->std_dev * rng.normal();
        shots.push_back(OutcomeSample{y, relu_readout(y), stream});
    }
    return shots;
}

} // namespace cvqp
