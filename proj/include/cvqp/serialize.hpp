#pragma once

#include <string>

#include "cvqp/measurement.hpp"
#include "cvqp/perceptron.hpp"

namespace cvqp {

// Shortest decimal form that round-trips to the same double (to_chars);
// integral values keep a trailing ".0" so the JSON/CSV type stays a float.
std::string format_double(double v);

// JSON report bodies; schemas are shipped under docs/schemas/.
std::string experiment_report_json(const ExperimentReport& report, int indent = 2);
std::string train_result_json(const TrainResult& result, double delta, const std::string& task,
                              std::uint64_t seed, int indent = 2);
std::string samples_json(const std::vector<OutcomeSample>& shots, double analytic_p_err,
                         double empirical_p_err, std::uint64_t seed, int indent = 2);

} // namespace cvqp
