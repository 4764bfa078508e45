#include "cvqp/perceptron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvqp/energy.hpp"
#include "cvqp/rng.hpp"

namespace cvqp {

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
constexpr double kEtaFloor = 1e-6;

double standard_normal_pdf(double t) { return kInvSqrt2Pi * std::exp(-0.5 * t * t); }

Polarity row_polarity(int label) {
    return label == 1 ? Polarity::positive : Polarity::nonpositive;
}

// Row error of the product encoding evaluated directly from parameters.
// This is the training loss, so it stays defined for parameter values a
// finite-difference probe may visit just outside the gate range.
double row_error(const TruthRow& row, double delta, std::span<const double> etas, double bias,
                 double displacement) {
    double z = bias;
    double var = 0.0;
    for (std::size_t j = 0; j < etas.size(); ++j) {
        z += etas[j] * static_cast<double>(row.inputs[j]) * displacement;
        var += etas[j] * etas[j];
    }
    const double sigma = delta * std::sqrt(0.5 * var);
    double mass_nonpositive;
    if (sigma > 0.0) {
        mass_nonpositive = normal_tail(z / sigma);
    } else {
        mass_nonpositive = z <= 0.0 ? 1.0 : 0.0; // point mass at z; ties read as 0
    }
    return row.label == 1 ? mass_nonpositive : 1.0 - mass_nonpositive;
}

} // namespace

TruthTable::TruthTable(std::vector<TruthRow> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) {
        throw ConfigurationError("truth table needs at least one row");
    }
    for (const TruthRow& r : rows_) {
        for (int v : r.inputs) {
            if (v != -1 && v != 1) {
                throw ConfigurationError("truth table inputs must be -1 or +1");
            }
        }
        if (r.label != 0 && r.label != 1) {
            throw ConfigurationError("truth table labels must be 0 or 1");
        }
    }
}

TruthTable TruthTable::and_table() {
    return TruthTable({
        {{-1, -1}, 0},
        {{-1, +1}, 0},
        {{+1, -1}, 0},
        {{+1, +1}, 1},
    });
}

TruthTable TruthTable::xor_table() {
    return TruthTable({
        {{-1, -1}, 0},
        {{-1, +1}, 1},
        {{+1, -1}, 1},
        {{+1, +1}, 0},
    });
}

double classical_forward(std::span<const double> x, std::span<const double> w, double b) {
    if (x.size() != w.size()) {
        throw ConfigurationError("input and weight lengths differ");
    }
    double z = b;
    for (std::size_t j = 0; j < x.size(); ++j) z += x[j] * w[j];
    return relu_readout(z);
}

ExperimentReport run_and(double delta, std::array<double, 2> etas, double bias,
                         double displacement) {
    const TruthTable table = TruthTable::and_table();
    const PerceptronConfig config({etas[0], etas[1]}, bias);
    ExperimentReport report;
    report.task = "and";
    report.delta = delta;
    report.etas = {etas[0], etas[1]};
    report.bias = bias;
    report.displacement = displacement;
    report.energy_total = 2.0 * mode_energy(displacement, delta);
    double err_sum = 0.0;
    for (const TruthRow& row : table.rows()) {
        const ProductGaussianState state({
            encode_mode(static_cast<double>(row.inputs[0]) * displacement, delta),
            encode_mode(static_cast<double>(row.inputs[1]) * displacement, delta),
        });
        GaussianMixture readout = GaussianMixture::from_readout(affine_readout(state, config));
        const double p = prob_error(readout, row_polarity(row.label));
        err_sum += p;
        report.rows.push_back(RowReport{row.inputs, row.label, std::move(readout), p});
    }
    report.aggregate_accuracy = 1.0 - err_sum / static_cast<double>(table.rows().size());
    return report;
}

ExperimentReport run_xor(double delta, std::array<double, 2> etas, double bias) {
    const TruthTable table = TruthTable::xor_table();
    ExperimentReport report;
    report.task = "xor";
    report.delta = delta;
    report.etas = {etas[0], etas[1]};
    report.bias = bias;
    report.displacement = 1.0;
    report.energy_total = 2.0 * mode_energy(1.0, delta);
    double err_sum = 0.0;
    for (const TruthRow& row : table.rows()) {
        const SuperposedGaussianState state = symmetric_superposition(
            static_cast<double>(row.inputs[0]), static_cast<double>(row.inputs[1]), delta);
        GaussianMixture readout = xor_homodyne_mixture(state, etas, bias);
        const double p = prob_error(readout, row_polarity(row.label));
        err_sum += p;
        report.rows.push_back(RowReport{row.inputs, row.label, std::move(readout), p});
    }
    report.aggregate_accuracy = 1.0 - err_sum / static_cast<double>(table.rows().size());
    return report;
}

double mean_error(const TruthTable& table, double delta, std::span<const double> etas,
                  double bias, double displacement) {
    if (etas.size() != 2) {
        throw ConfigurationError("product encoding takes exactly two weights");
    }
    if (!(delta > 0.0)) {
        throw InvalidWidthError("width must be positive");
    }
    double sum = 0.0;
    for (const TruthRow& row : table.rows()) {
        sum += row_error(row, delta, etas, bias, displacement);
    }
    return sum / static_cast<double>(table.rows().size());
}

std::vector<double> mean_error_gradient(const TruthTable& table, double delta,
                                        std::span<const double> etas, double bias) {
    const double d2 = delta * delta;
    double var = 0.0;
    for (double e : etas) var += e * e;
    const double sigma = delta * std::sqrt(0.5 * var);
    std::vector<double> grad(etas.size() + 1, 0.0);
    const double inv_rows = 1.0 / static_cast<double>(table.rows().size());
    for (const TruthRow& row : table.rows()) {
        double z = bias;
        for (std::size_t j = 0; j < etas.size(); ++j) {
            z += etas[j] * static_cast<double>(row.inputs[j]);
        }
        const double t = z / sigma;
        // d p_row / d t; label 1 errs on the lower tail, label 0 on the upper.
        const double dp_dt = (row.label == 1 ? -1.0 : 1.0) * standard_normal_pdf(t);
        for (std::size_t j = 0; j < etas.size(); ++j) {
            const double dsigma = etas[j] * d2 / (2.0 * sigma);
            const double dt = static_cast<double>(row.inputs[j]) / sigma - t * dsigma / sigma;
            grad[j] += inv_rows * dp_dt * dt;
        }
        grad.back() += inv_rows * dp_dt / sigma;
    }
    return grad;
}

std::vector<double> mean_error_gradient_fd(const TruthTable& table, double delta,
                                           std::span<const double> etas, double bias,
                                           double step) {
    std::vector<double> params(etas.begin(), etas.end());
    params.push_back(bias);
    std::vector<double> grad(params.size());
    for (std::size_t k = 0; k < params.size(); ++k) {
        std::vector<double> up = params;
        std::vector<double> dn = params;
        up[k] += step;
        dn[k] -= step;
        const double fu = mean_error(table, delta, std::span(up).first(etas.size()), up.back());
        const double fd = mean_error(table, delta, std::span(dn).first(etas.size()), dn.back());
        grad[k] = (fu - fd) / (2.0 * step);
    }
    return grad;
}

double product_encoding_floor(const TruthTable& table, double delta, std::size_t eta_points,
                              std::size_t bias_points) {
    if (eta_points == 0 || bias_points == 0) {
        throw ConfigurationError("sweep needs at least one point per axis");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < eta_points; ++i) {
        // Midpoint grid over [-1, 1]: never lands on a zero weight.
        const double e1 = -1.0 + (static_cast<double>(i) + 0.5) * 2.0 / static_cast<double>(eta_points);
        for (std::size_t j = 0; j < eta_points; ++j) {
            const double e2 =
                -1.0 + (static_cast<double>(j) + 0.5) * 2.0 / static_cast<double>(eta_points);
            const std::array<double, 2> etas{e1, e2};
            for (std::size_t k = 0; k < bias_points; ++k) {
                const double b =
                    bias_points == 1
                        ? -3.0
                        : -3.0 + 6.0 * static_cast<double>(k) / static_cast<double>(bias_points - 1);
                best = std::min(best, mean_error(table, delta, etas, b));
            }
        }
    }
    return best;
}

namespace {

// Keep weights inside the gate range; a zero weight is outside the gate set,
// so magnitudes are floored preserving sign.
double project_eta(double eta) {
    const double clamped = std::clamp(eta, -1.0, 1.0);
    if (std::fabs(clamped) < kEtaFloor) {
        return std::copysign(kEtaFloor, clamped == 0.0 ? 1.0 : clamped);
    }
    return clamped;
}

} // namespace

TrainResult train_weights(const TruthTable& table, double delta, const TrainConfig& config,
                          std::uint64_t seed) {
    if (config.learning_rate < 0.0 || !std::isfinite(config.learning_rate)) {
        throw ConfigurationError("learning rate must be nonnegative");
    }
    if (config.max_iterations == 0 || config.restarts == 0) {
        throw ConfigurationError("trainer needs at least one iteration and one restart");
    }
    if (!(config.tolerance > 0.0)) {
        throw ConfigurationError("convergence tolerance must be positive");
    }
    if (!(delta > 0.0)) {
        throw InvalidWidthError("width must be positive");
    }

    TrainResult best;
    best.final_loss = std::numeric_limits<double>::infinity();
    best.converged = false;

    for (std::size_t r = 0; r < config.restarts; ++r) {
        NormalSampler rng(stream_seed(seed, r));
        std::vector<double> etas(2);
        for (double& e : etas) {
            const double v = 2.0 * rng.uniform01() - 1.0;
            e = std::copysign(std::max(0.05, std::fabs(v)), v == 0.0 ? 1.0 : v);
        }
        double bias = 4.0 * rng.uniform01() - 2.0;

        std::vector<double> trace;
        trace.reserve(config.max_iterations);
        bool converged = false;
        double loss = mean_error(table, delta, etas, bias);
        double best_loss_here = loss;
        std::vector<double> best_etas_here = etas;
        double best_bias_here = bias;

        if (config.learning_rate > 0.0) {
            for (std::size_t it = 0; it < config.max_iterations; ++it) {
                const std::vector<double> grad =
                    mean_error_gradient_fd(table, delta, etas, bias);
                double update = 0.0;
                for (std::size_t j = 0; j < etas.size(); ++j) {
                    const double fresh = project_eta(etas[j] - config.learning_rate * grad[j]);
                    update = std::max(update, std::fabs(fresh - etas[j]));
                    etas[j] = fresh;
                }
                const double fresh_bias = bias - config.learning_rate * grad.back();
                update = std::max(update, std::fabs(fresh_bias - bias));
                bias = fresh_bias;
                loss = mean_error(table, delta, etas, bias);
                trace.push_back(loss);
                if (loss < best_loss_here) {
                    best_loss_here = loss;
                    best_etas_here = etas;
                    best_bias_here = bias;
                }
                if (update <= config.tolerance) {
                    converged = true;
                    break;
                }
            }
        } else {
            trace.push_back(loss); // zero learning rate: no updates possible
        }

        if (best_loss_here < best.final_loss) {
            best.etas = best_etas_here;
            best.bias = best_bias_here;
            best.final_loss = best_loss_here;
            best.loss_trace = std::move(trace);
            best.converged = converged && config.learning_rate > 0.0;
        }
    }
    return best;
}

} // namespace cvqp
