#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cvqp/measurement.hpp"

namespace cvqp {

// One labeled pattern: inputs in {-1, +1}, label in {0, 1}.
struct TruthRow {
    std::array<int, 2> inputs;
    int label;
};

class TruthTable {
  public:
    explicit TruthTable(std::vector<TruthRow> rows);

    static TruthTable and_table(); // 1 only at (+1, +1)
    static TruthTable xor_table(); // 1 at mixed signs

    const std::vector<TruthRow>& rows() const noexcept { return rows_; }

  private:
    std::vector<TruthRow> rows_;
};

// Noiseless reference: max(0, x . w + b).
double classical_forward(std::span<const double> x, std::span<const double> w, double b);

struct RowReport {
    std::array<int, 2> inputs;
    int label;
    GaussianMixture readout; // post-circuit homodyne statistics
    double p_err;
};

struct ExperimentReport {
    std::string task; // "and" or "xor"
    double delta;
    std::vector<double> etas;
    double bias;
    double displacement;  // encoding scale: inputs enter as input * displacement
    double energy_total;  // sum of per-mode energies at this encoding
    std::vector<RowReport> rows;
    double aggregate_accuracy; // exactly 1 - mean of row p_err
};

// Conjunction experiment: rows of the AND table encoded as the product state
// (x1 s, x2 s) at width delta (s = displacement), read out with `etas` and
// `bias`.
ExperimentReport run_and(double delta, std::array<double, 2> etas = {1.0, 1.0},
                         double bias = -1.0, double displacement = 1.0);

// Parity experiment: rows encoded as symmetric superpositions at width delta,
// read out with etas fixed at (1, -1) and the given bias.
ExperimentReport run_xor(double delta, std::array<double, 2> etas = {1.0, -1.0},
                         double bias = -1.0);

// Mean misclassification probability over the table for the product-state
// encoding with parameters (etas, bias) at width delta.
double mean_error(const TruthTable& table, double delta, std::span<const double> etas,
                  double bias, double displacement = 1.0);

// Gradient of mean_error with respect to (etas..., bias), either in closed
// form or by central finite differences with the given step.
std::vector<double> mean_error_gradient(const TruthTable& table, double delta,
                                        std::span<const double> etas, double bias);
std::vector<double> mean_error_gradient_fd(const TruthTable& table, double delta,
                                           std::span<const double> etas, double bias,
                                           double step = 1e-5);

// Exhaustive midpoint sweep of the product encoding over eta in [-1, 1]^2
// (never hitting 0) and bias in [-3, 3]; returns the smallest mean error
// found. Lower-bounds what gradient training can reach on this encoding.
double product_encoding_floor(const TruthTable& table, double delta,
                              std::size_t eta_points = 40, std::size_t bias_points = 61);

struct TrainConfig {
    double learning_rate = 0.5;  // >= 0; 0 performs no updates
    std::size_t max_iterations = 2000;
    double tolerance = 1e-9;     // convergence threshold on the update norm
    std::size_t restarts = 4;    // seeded random restarts
};

struct TrainResult {
    std::vector<double> etas;
    double bias;
    double final_loss;          // mean_error at the returned parameters
    std::vector<double> loss_trace; // per-iteration loss of the best restart
    bool converged;
};

// Gradient descent on mean_error using central finite differences (the
// analytic gradient is exposed above as a cross-check). Weights are clamped
// into [-1, 1] each step with |eta| floored at 1e-6 (a zero weight is outside
// the gate set). Deterministic for a fixed seed; non-convergence returns the
// best parameters found with `converged = false`. Negative learning rates,
// zero iterations, and nonpositive tolerances are ConfigurationErrors.
TrainResult train_weights(const TruthTable& table, double delta, const TrainConfig& config,
                          std::uint64_t seed);

} // namespace cvqp
