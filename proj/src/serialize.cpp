#include "cvqp/serialize.hpp"

#include <charconv>

#include <json.hpp>

namespace cvqp {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

namespace {

nlohmann::json mixture_json(const GaussianMixture& mix) {
    nlohmann::json components = nlohmann::json::array();
    for (const MixtureComponent& c : mix.components()) {
        components.push_back({{"weight", c.weight}, {"mean", c.mean}, {"std", c.std_dev}});
    }
    nlohmann::json out{{"components", components}};
    if (mix.components().size() == 1) {
        out["mean"] = mix.components()[0].mean;
        out["std"] = mix.components()[0].std_dev;
    }
    return out;
}

} // namespace

std::string experiment_report_json(const ExperimentReport& report, int indent) {
    nlohmann::json rows = nlohmann::json::array();
    for (const RowReport& r : report.rows) {
        rows.push_back({
            {"inputs", {r.inputs[0], r.inputs[1]}},
            {"label", r.label},
            {"readout", mixture_json(r.readout)},
            {"p_err", r.p_err},
        });
    }
    const nlohmann::json j{
        {"task", report.task},
        {"delta", report.delta},
        {"etas", report.etas},
        {"bias", report.bias},
        {"displacement", report.displacement},
        {"energy_total", report.energy_total},
        {"rows", rows},
        {"aggregate_accuracy", report.aggregate_accuracy},
    };
    return j.dump(indent);
}

std::string train_result_json(const TrainResult& result, double delta, const std::string& task,
                              std::uint64_t seed, int indent) {
    const nlohmann::json j{
        {"task", task},
        {"delta", delta},
        {"seed", seed},
        {"etas", result.etas},
        {"bias", result.bias},
        {"final_loss", result.final_loss},
        {"converged", result.converged},
        {"loss_trace", result.loss_trace},
    };
    return j.dump(indent);
}

std::string samples_json(const std::vector<OutcomeSample>& shots, double analytic_p_err,
                         double empirical_p_err, std::uint64_t seed, int indent) {
    nlohmann::json arr = nlohmann::json::array();
    for (const OutcomeSample& s : shots) {
        arr.push_back({{"y", s.y}, {"activated", s.activated}});
    }
    const nlohmann::json j{
        {"seed", seed},
        {"stream", shots.empty() ? 0 : shots.front().stream},
        {"n_shots", shots.size()},
        {"analytic_p_err", analytic_p_err},
        {"empirical_p_err", empirical_p_err},
        {"shots", arr},
    };
    return j.dump(indent);
}

} // namespace cvqp
