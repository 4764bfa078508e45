// cvqp: command-line harness for the continuous-variable perceptron library.
//
// Subcommands: and-table | xor-table | surface | oracle-verify | sample | train.
// Outputs are deterministic for a fixed (config, seed): rerunning a command
// writes byte-identical files. JSON goes to --out when given, otherwise to
// $CVQP_OUT_DIR/<name>, otherwise to stdout.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cvqp/energy.hpp"
#include "cvqp/errors.hpp"
#include "cvqp/gaussian.hpp"
#include "cvqp/measurement.hpp"
#include "cvqp/oracle_grid.hpp"
#include "cvqp/perceptron.hpp"
#include "cvqp/serialize.hpp"
#include "cvqp/superposition.hpp"
#include "json.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Shared option state, merged from an optional JSON config file and flags
// (flags win).

struct CommonOptions {
    std::string config_path;
    std::vector<double> deltas;   // from --delta
    std::vector<double> rs;       // from --r (delta = exp(-r))
    std::optional<double> energy; // two-mode budget, inverted to a width
    std::vector<double> etas;
    std::optional<double> bias;
    std::optional<double> displacement;
    std::optional<std::uint64_t> seed;
    std::string out_path;
};

[[noreturn]] void fail(const std::string& message) {
    throw CLI::ValidationError("cvqp", message);
}

void merge_config_file(CommonOptions& opt, const CLI::App& cmd) {
    if (opt.config_path.empty()) {
        return;
    }
    std::ifstream in(opt.config_path);
    if (!in) {
        fail("cannot open config file '" + opt.config_path + "'");
    }
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const std::exception& e) {
        fail("config file '" + opt.config_path + "' is not valid JSON: " + e.what());
    }
    // Flags override file values: only fill fields the user did not pass.
    if (doc.contains("delta") && opt.deltas.empty() && cmd.count("--r") == 0) {
        opt.deltas.push_back(doc.at("delta").get<double>());
    }
    if (doc.contains("energy_total") && !opt.energy.has_value()) {
        opt.energy = doc.at("energy_total").get<double>();
    }
    if (doc.contains("etas") && opt.etas.empty()) {
        opt.etas = doc.at("etas").get<std::vector<double>>();
    }
    if (doc.contains("bias") && !opt.bias.has_value()) {
        opt.bias = doc.at("bias").get<double>();
    }
    if (doc.contains("displacement") && !opt.displacement.has_value()) {
        opt.displacement = doc.at("displacement").get<double>();
    }
    if (doc.contains("seed") && !opt.seed.has_value()) {
        opt.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("out") && opt.out_path.empty()) {
        opt.out_path = doc.at("out").get<std::string>();
    }
}

// Resolves the widths to run: explicit --delta/--r values, or an energy
// budget inverted at the given displacement, or the provided defaults.
// Exactly one of the width-style and budget-style specifications may be used.
std::vector<double> resolve_deltas(const CommonOptions& opt, double displacement,
                                   const std::vector<double>& fallback) {
    const bool has_width = !opt.deltas.empty() || !opt.rs.empty();
    if (has_width && opt.energy.has_value()) {
        fail("give either a width (--delta/--r) or an energy budget (--energy), not both");
    }
    std::vector<double> deltas = opt.deltas;
    for (double r : opt.rs) {
        deltas.push_back(std::exp(-r));
    }
    if (opt.energy.has_value()) {
        const double d2 = cvqp::width_squared_from_budget(
            cvqp::EnergyBudget{*opt.energy, std::fabs(displacement)});
        deltas.push_back(std::sqrt(d2));
    }
    if (deltas.empty()) {
        deltas = fallback;
    }
    return deltas;
}

void write_text(const std::string& out_path, const std::string& default_name,
                const std::string& text) {
    std::string target = out_path;
    if (target.empty()) {
        if (const char* dir = std::getenv("CVQP_OUT_DIR")) {
            target = (std::filesystem::path(dir) / default_name).string();
        }
    }
    if (target.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(target, std::ios::binary);
    if (!out) {
        fail("cannot write to '" + target + "'");
    }
    out << text;
    if (!out) {
        fail("short write to '" + target + "'");
    }
}

void print_report_table(const std::vector<cvqp::ExperimentReport>& reports) {
    if (reports.empty()) {
        return;
    }
    std::ostringstream head;
    head << "inputs    label";
    for (const cvqp::ExperimentReport& rep : reports) {
        head << "  p_err[delta=" << cvqp::format_double(rep.delta) << "]";
    }
    std::cout << head.str() << "\n";
    for (std::size_t r = 0; r < reports.front().rows.size(); ++r) {
        const cvqp::RowReport& row = reports.front().rows[r];
        std::ostringstream line;
        line << "(" << (row.inputs[0] > 0 ? "+1" : "-1") << ","
             << (row.inputs[1] > 0 ? "+1" : "-1") << ")  " << row.label << "    ";
        for (const cvqp::ExperimentReport& rep : reports) {
            line << "  " << cvqp::format_double(rep.rows[r].p_err);
        }
        std::cout << line.str() << "\n";
    }
    for (const cvqp::ExperimentReport& rep : reports) {
        std::cout << "aggregate_accuracy[delta=" << cvqp::format_double(rep.delta)
                  << "] = " << cvqp::format_double(rep.aggregate_accuracy) << "\n";
    }
}

std::string bundle_reports(const std::vector<cvqp::ExperimentReport>& reports) {
    ordered_json bundle;
    bundle["reports"] = ordered_json::array();
    for (const cvqp::ExperimentReport& rep : reports) {
        bundle["reports"].push_back(ordered_json::parse(cvqp::experiment_report_json(rep)));
    }
    return bundle.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// and-table / xor-table

int run_table(const CommonOptions& opt, bool conjunction) {
    const double displacement = opt.displacement.value_or(1.0);
    const double bias = opt.bias.value_or(-1.0);
    const std::vector<double> deltas =
        resolve_deltas(opt, displacement, {1.0, std::exp(-1.0)});

    std::array<double, 2> etas{1.0, conjunction ? 1.0 : -1.0};
    if (!opt.etas.empty()) {
        if (opt.etas.size() != 2) {
            fail("expected exactly two --eta values");
        }
        etas = {opt.etas[0], opt.etas[1]};
    }

    std::vector<cvqp::ExperimentReport> reports;
    for (double delta : deltas) {
        reports.push_back(conjunction ? cvqp::run_and(delta, etas, bias, displacement)
                                      : cvqp::run_xor(delta, etas, bias));
    }
    const std::string name = conjunction ? "and-table.json" : "xor-table.json";
    const bool to_stdout = opt.out_path.empty() && std::getenv("CVQP_OUT_DIR") == nullptr;
    if (!to_stdout) {
        print_report_table(reports);
    }
    write_text(opt.out_path, name, bundle_reports(reports));
    return 0;
}

// ---------------------------------------------------------------------------
// surface

int run_surface(const CommonOptions& opt, const std::string& task,
                const cvqp::SurfaceGrid& grid) {
    const cvqp::TradeoffSurface surface =
        task == "and" ? cvqp::and_surface(grid) : cvqp::xor_surface(grid);
    std::ostringstream csv;
    cvqp::write_surface_csv(surface, csv);
    write_text(opt.out_path, "surface-" + task + ".csv", csv.str());
    return 0;
}

// ---------------------------------------------------------------------------
// oracle-verify

struct OracleCase {
    std::string description;
    double deviation;
    double tolerance;
};

int run_oracle_verify(const CommonOptions& opt, double grid_l, std::size_t grid_n,
                      std::size_t bins) {
    const std::uint64_t seed = opt.seed.value_or(20240);
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> center(-2.0, 2.0);
    std::uniform_real_distribution<double> small_center(-1.5, 1.5);
    std::uniform_real_distribution<double> width(std::exp(-1.0), 1.0);
    std::uniform_real_distribution<double> bias(-2.0, 2.0);
    std::uniform_real_distribution<double> shift(-2.0, 2.0);
    std::uniform_real_distribution<double> var(0.1, 2.0);
    std::bernoulli_distribution flip(0.5);

    const cvqp::GridSpec spec{grid_l, grid_n};
    std::vector<OracleCase> cases;

    // Product states against the closed-form readout density.
    for (int rep = 0; rep < 20; ++rep) {
        const cvqp::GaussianMode m1{center(gen), width(gen)};
        const cvqp::GaussianMode m2{center(gen), width(gen)};
        const std::array<double, 2> etas{flip(gen) ? -1.0 : 1.0, flip(gen) ? -1.0 : 1.0};
        const double b = bias(gen);
        const cvqp::GridWavefunction2 psi =
            cvqp::build_wavefunction(cvqp::ProductGaussianState({m1, m2}), spec);
        const cvqp::ReadoutHistogram hist =
            cvqp::oracle_readout_distribution(psi, etas, b, bins);
        const cvqp::GaussianMode readout = cvqp::affine_readout(
            cvqp::ProductGaussianState({m1, m2}),
            cvqp::PerceptronConfig{{etas[0], etas[1]}, b});
        double worst = 0.0;
        for (std::size_t k = 0; k < hist.mass.size(); ++k) {
            worst = std::max(worst, std::fabs(hist.density(k) - cvqp::homodyne_density(
                                                                    readout, hist.center(k))));
        }
        std::ostringstream desc;
        desc << "product readout #" << rep << " (x1=" << cvqp::format_double(m1.center)
             << ", x2=" << cvqp::format_double(m2.center) << ")";
        cases.push_back({desc.str(), worst, 1e-6});
        cases.push_back({"product norm #" + std::to_string(rep), psi.raw_norm_error(), 1e-9});
    }

    // Superposed states against the parity mixture.
    for (int rep = 0; rep < 10; ++rep) {
        const double x1 = small_center(gen);
        const double x2 = small_center(gen);
        const double d = width(gen);
        const double b = bias(gen);
        const cvqp::SuperposedGaussianState state = cvqp::symmetric_superposition(x1, x2, d);
        const cvqp::GridWavefunction2 psi = cvqp::build_wavefunction(state, spec);
        const cvqp::ReadoutHistogram hist =
            cvqp::oracle_readout_distribution(psi, {1.0, -1.0}, b, bins);
        const cvqp::GaussianMixture mix = cvqp::xor_homodyne_mixture(state, {1.0, -1.0}, b);
        double worst = 0.0;
        for (std::size_t k = 0; k < hist.mass.size(); ++k) {
            worst = std::max(worst, std::fabs(hist.density(k) - mix.density(hist.center(k))));
        }
        std::ostringstream desc;
        desc << "superposition readout #" << rep << " (x1=" << cvqp::format_double(x1)
             << ", x2=" << cvqp::format_double(x2) << ")";
        cases.push_back({desc.str(), worst, 1e-6});
        cases.push_back({"superposition norm #" + std::to_string(rep), psi.raw_norm_error(),
                         1e-9});
    }

    // Gaussian convolution identity on random parameters.
    for (int rep = 0; rep < 50; ++rep) {
        const double dev = cvqp::convolution_identity_check(shift(gen), var(gen), shift(gen),
                                                            var(gen), shift(gen));
        cases.push_back({"convolution identity #" + std::to_string(rep), dev, 1e-8});
    }

    bool ok = true;
    double worst_ratio = 0.0;
    std::string worst_case;
    for (const OracleCase& c : cases) {
        const double ratio = c.deviation / c.tolerance;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_case = c.description;
        }
        if (c.deviation > c.tolerance) {
            ok = false;
            std::cerr << "[FAIL] " << c.description << ": deviation " << c.deviation
                      << " exceeds " << c.tolerance << "\n";
        }
    }
    std::cout << "checked " << cases.size() << " cases (grid L=" << grid_l
              << ", N=" << grid_n << ", seed=" << seed << ")\n";
    std::cout << "worst case: " << worst_case << " at " << worst_ratio
              << " of its tolerance\n";
    std::cout << (ok ? "all deviations within tolerance\n"
                     : "tolerance breached; see error stream\n");
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sample

int run_sample(const CommonOptions& opt, const std::string& task, int x1, int x2,
               std::size_t shots) {
    const double displacement = opt.displacement.value_or(1.0);
    const double bias = opt.bias.value_or(-1.0);
    const std::vector<double> deltas =
        resolve_deltas(opt, displacement, {std::exp(-1.0)});
    if (deltas.size() != 1) {
        fail("sampling uses a single width; give one --delta/--r/--energy value");
    }
    const double delta = deltas.front();
    if ((x1 != 1 && x1 != -1) || (x2 != 1 && x2 != -1)) {
        fail("--x1/--x2 must be +1 or -1");
    }

    int label = 0;
    std::optional<cvqp::GaussianMixture> dist;
    if (task == "and") {
        label = (x1 == 1 && x2 == 1) ? 1 : 0;
        const cvqp::GaussianMode readout = cvqp::affine_readout(
            cvqp::ProductGaussianState({
                cvqp::encode_mode(displacement * x1, delta),
                cvqp::encode_mode(displacement * x2, delta),
            }),
            cvqp::PerceptronConfig{{1.0, 1.0}, bias});
        dist = cvqp::GaussianMixture::from_readout(readout);
    } else {
        label = x1 != x2 ? 1 : 0;
        dist = cvqp::xor_homodyne_mixture(
            cvqp::symmetric_superposition(displacement * x1, displacement * x2, delta),
            {1.0, -1.0}, bias);
    }
    const cvqp::Polarity polarity =
        label == 1 ? cvqp::Polarity::positive : cvqp::Polarity::nonpositive;
    const double analytic = cvqp::prob_error(*dist, polarity);

    const std::uint64_t seed = opt.seed.value_or(1);
    const std::vector<cvqp::OutcomeSample> samples =
        cvqp::sample_outcomes(*dist, seed, shots);
    std::size_t wrong = 0;
    for (const cvqp::OutcomeSample& s : samples) {
        const bool fired = s.y > 0.0;
        wrong += (label == 1 ? !fired : fired) ? 1 : 0;
    }
    const double empirical = static_cast<double>(wrong) / static_cast<double>(shots);

    write_text(opt.out_path, "sample-" + task + ".json",
               cvqp::samples_json(samples, analytic, empirical, seed));
    return 0;
}

// ---------------------------------------------------------------------------
// train

int run_train(const CommonOptions& opt, const std::string& task, double lr,
              std::size_t max_iter, double tol, std::size_t restarts) {
    const std::vector<double> deltas = resolve_deltas(opt, 1.0, {std::exp(-1.0)});
    if (deltas.size() != 1) {
        fail("training uses a single width; give one --delta/--r/--energy value");
    }
    const cvqp::TruthTable table =
        task == "and" ? cvqp::TruthTable::and_table() : cvqp::TruthTable::xor_table();
    const std::uint64_t seed = opt.seed.value_or(1);
    const cvqp::TrainResult result = cvqp::train_weights(
        table, deltas.front(), cvqp::TrainConfig{lr, max_iter, tol, restarts}, seed);
    write_text(opt.out_path, "train-" + task + ".json",
               cvqp::train_result_json(result, deltas.front(), task, seed));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous-variable perceptron simulator"};
    app.require_subcommand(1);

    auto add_common = [](CLI::App* cmd, CommonOptions& opt, bool with_eta) {
        cmd->add_option("--config", opt.config_path, "JSON config file; flags override it");
        cmd->add_option("--delta", opt.deltas, "wavepacket width (repeatable)");
        cmd->add_option("--r", opt.rs, "squeezing parameter, width exp(-r) (repeatable)");
        cmd->add_option("--energy", opt.energy,
                        "two-mode energy budget, inverted to a width");
        if (with_eta) {
            cmd->add_option("--eta", opt.etas, "readout weights (two values)");
        }
        cmd->add_option("--bias", opt.bias, "readout displacement");
        cmd->add_option("--displacement", opt.displacement, "input encoding scale");
        cmd->add_option("--seed", opt.seed, "master seed");
        cmd->add_option("--out", opt.out_path, "output path (default $CVQP_OUT_DIR)");
    };

    CommonOptions and_opt;
    CLI::App* cmd_and = app.add_subcommand("and-table", "conjunction error-rate table");
    add_common(cmd_and, and_opt, true);

    CommonOptions xor_opt;
    CLI::App* cmd_xor = app.add_subcommand("xor-table", "parity error-rate table");
    add_common(cmd_xor, xor_opt, true);

    CommonOptions surf_opt;
    std::string surf_task = "and";
    cvqp::SurfaceGrid grid;
    CLI::App* cmd_surf = app.add_subcommand("surface", "error-vs-energy trade-off CSV");
    cmd_surf->add_option("--task", surf_task, "and | xor")
        ->check(CLI::IsMember({"and", "xor"}));
    cmd_surf->add_option("--x-min", grid.x_min, "displacement axis start");
    cmd_surf->add_option("--x-max", grid.x_max, "displacement axis end");
    cmd_surf->add_option("--x-points", grid.x_points, "displacement axis points");
    cmd_surf->add_option("--e-min", grid.e_min, "energy axis start");
    cmd_surf->add_option("--e-max", grid.e_max, "energy axis end");
    cmd_surf->add_option("--e-points", grid.e_points, "energy axis points");
    add_common(cmd_surf, surf_opt, false);

    CommonOptions oracle_opt;
    double grid_l = 12.0;
    std::size_t grid_n = 2048;
    std::size_t bins = 0;
    CLI::App* cmd_oracle =
        app.add_subcommand("oracle-verify", "compare closed forms against the grid oracle");
    cmd_oracle->add_option("--grid-l", grid_l, "grid half-extent");
    cmd_oracle->add_option("--grid-n", grid_n, "grid points per axis");
    cmd_oracle->add_option("--bins", bins, "histogram bins (0 = automatic layout)");
    add_common(cmd_oracle, oracle_opt, false);

    CommonOptions sample_opt;
    std::string sample_task = "and";
    int x1 = 1;
    int x2 = 1;
    std::size_t shots = 100000;
    CLI::App* cmd_sample = app.add_subcommand("sample", "seeded homodyne shots for one row");
    cmd_sample->add_option("--task", sample_task, "and | xor")
        ->check(CLI::IsMember({"and", "xor"}));
    cmd_sample->add_option("--x1", x1, "first input (+1 or -1)");
    cmd_sample->add_option("--x2", x2, "second input (+1 or -1)");
    cmd_sample->add_option("--shots", shots, "number of shots")
        ->check(CLI::PositiveNumber);
    add_common(cmd_sample, sample_opt, false);

    CommonOptions train_opt;
    std::string train_task = "and";
    double lr = 0.5;
    std::size_t max_iter = 2000;
    double tol = 1e-9;
    std::size_t restarts = 4;
    CLI::App* cmd_train = app.add_subcommand("train", "fit readout weights by gradient descent");
    cmd_train->add_option("--task", train_task, "and | xor")
        ->check(CLI::IsMember({"and", "xor"}));
    cmd_train->add_option("--lr", lr, "learning rate (> 0)");
    cmd_train->add_option("--max-iter", max_iter, "iteration cap")->check(CLI::PositiveNumber);
    cmd_train->add_option("--tol", tol, "convergence tolerance on the update norm");
    cmd_train->add_option("--restarts", restarts, "random restarts")
        ->check(CLI::PositiveNumber);
    add_common(cmd_train, train_opt, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_and->parsed()) {
            merge_config_file(and_opt, *cmd_and);
            return run_table(and_opt, true);
        }
        if (cmd_xor->parsed()) {
            merge_config_file(xor_opt, *cmd_xor);
            return run_table(xor_opt, false);
        }
        if (cmd_surf->parsed()) {
            merge_config_file(surf_opt, *cmd_surf);
            return run_surface(surf_opt, surf_task, grid);
        }
        if (cmd_oracle->parsed()) {
            merge_config_file(oracle_opt, *cmd_oracle);
            return run_oracle_verify(oracle_opt, grid_l, grid_n, bins);
        }
        if (cmd_sample->parsed()) {
            merge_config_file(sample_opt, *cmd_sample);
            return run_sample(sample_opt, sample_task, x1, x2, shots);
        }
        if (cmd_train->parsed()) {
            merge_config_file(train_opt, *cmd_train);
            if (!(lr > 0.0)) {
                fail("learning rate must be positive");
            }
            if (!(tol > 0.0)) {
                fail("tolerance must be positive");
            }
            return run_train(train_opt, train_task, lr, max_iter, tol, restarts);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
