#pragma once

#include <cstdint>
#include <vector>

#include "cvqp/superposition.hpp"

namespace cvqp {

// Side of y = 0 a correctly classified outcome lands on. A logical-1 row
// expects y > 0; a logical-0 row expects y <= 0 (the tie y = 0 reads as 0).
enum class Polarity { positive, nonpositive };

// Measurement-induced activation: the ancilla stays at |0> when y <= 0 and
// is displaced to y otherwise, so the recorded activation is max(0, y).
double relu_readout(double y);

// Upper tail Q(z) of the standard normal, 0.5 * erfc(z / sqrt(2)).
// Underflows to 0 near z ~ 38; use log_normal_tail beyond that.
double normal_tail(double z);

// ln Q(z); switches to the asymptotic series
//   -z^2/2 - ln(z sqrt(2 pi)) + ln(1 - 1/z^2 + 3/z^4 - ...)
// for z > 10, where direct evaluation loses precision or underflows.
double log_normal_tail(double z);

// Misclassification probability of a readout distribution:
//   positive    -> mass at y <= 0 = sum_k w_k Q(mu_k / sigma_k)
//   nonpositive -> complementary mass at y > 0.
// Both polarities share one tail evaluation, so the two results add to 1
// exactly.
double prob_error(const GaussianMixture& dist, Polarity expected);

struct OutcomeSample {
    double y;         // homodyne outcome
    double activated; // relu_readout(y)
    std::uint64_t stream; // sampler stream identifier
};

// `n` seeded homodyne shots from a mixture. Each shot consumes one uniform
// (component pick against cumulative weights) and one Box-Muller normal from
// the stream stream_seed(seed, worker); single-threaded callers use worker 0.
// Parallel callers give each worker its own stream and concatenate results in
// worker-index order.
std::vector<OutcomeSample> sample_outcomes(const GaussianMixture& dist, std::uint64_t seed,
                                           std::size_t n, std::uint64_t worker = 0);

} // namespace cvqp
