// Python bindings for the continuous-variable perceptron core. The report-
// producing entry points return dicts parsed from the canonical JSON
// serializers, so Python callers see exactly the documented schema.

#include <array>
#include <cstdint>
#include <sstream>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cvqp/energy.hpp"
#include "cvqp/gaussian.hpp"
#include "cvqp/measurement.hpp"
#include "cvqp/perceptron.hpp"
#include "cvqp/serialize.hpp"
#include "cvqp/superposition.hpp"

namespace py = pybind11;

namespace {

py::object loads(const std::string& text) {
    return py::module_::import("json").attr("loads")(text);
}

std::array<double, 2> to_eta_pair(const std::vector<double>& etas) {
    if (etas.size() != 2) {
        throw cvqp::ConfigurationError("expected exactly two readout weights");
    }
    return {etas[0], etas[1]};
}

cvqp::GaussianMixture to_mixture(
    const std::vector<std::tuple<double, double, double>>& components) {
    std::vector<cvqp::MixtureComponent> parts;
    parts.reserve(components.size());
    for (const auto& [w, mean, sd] : components) {
        parts.push_back({w, mean, sd});
    }
    return cvqp::GaussianMixture(parts);
}

} // namespace

PYBIND11_MODULE(_cvqp, m) {
    m.doc() = "continuous-variable perceptron simulator (statistics-level core)";

    py::register_exception<cvqp::InvalidWidthError>(m, "InvalidWidthError",
                                                    PyExc_ValueError);
    py::register_exception<cvqp::InvalidWeightError>(m, "InvalidWeightError",
                                                     PyExc_ValueError);
    py::register_exception<cvqp::InfeasibleBudgetError>(m, "InfeasibleBudgetError",
                                                        PyExc_ValueError);
    py::register_exception<cvqp::ConfigurationError>(m, "ConfigurationError",
                                                     PyExc_ValueError);

    py::class_<cvqp::GaussianMode>(m, "GaussianMode")
        .def(py::init<double, double>(), py::arg("center") = 0.0, py::arg("width") = 1.0)
        .def_readwrite("center", &cvqp::GaussianMode::center)
        .def_readwrite("width", &cvqp::GaussianMode::width)
        .def("__repr__", [](const cvqp::GaussianMode& mode) {
            return "GaussianMode(center=" + cvqp::format_double(mode.center) +
                   ", width=" + cvqp::format_double(mode.width) + ")";
        });

    m.def("encode_mode", &cvqp::encode_mode, py::arg("x"), py::arg("delta"),
          "Gaussian wavepacket centered at x with width delta");
    m.def("attenuate", &cvqp::attenuate, py::arg("mode"), py::arg("eta"),
          "beam-splitter weight application: center -> eta x, width -> |eta| delta");
    m.def("delta_from_squeezing", &cvqp::delta_from_squeezing, py::arg("r"));
    m.def("squeezing_from_delta", &cvqp::squeezing_from_delta, py::arg("delta"));
    m.def("gaussian_overlap", &cvqp::gaussian_overlap, py::arg("a"), py::arg("b"),
          "absolute overlap |<a|b>| of two wavepackets");
    m.def(
        "affine_readout",
        [](const std::vector<cvqp::GaussianMode>& modes, const std::vector<double>& etas,
           double bias) {
            return cvqp::affine_readout(cvqp::ProductGaussianState(modes),
                                        cvqp::PerceptronConfig(etas, bias));
        },
        py::arg("modes"), py::arg("etas"), py::arg("bias"),
        "statistics of sum_k eta_k q_k + bias for a product state");
    m.def("homodyne_density", &cvqp::homodyne_density, py::arg("readout"), py::arg("y"),
          "position-quadrature probability density of the readout mode");

    m.def("normal_tail", &cvqp::normal_tail, py::arg("z"),
          "upper tail mass of the standard normal");
    m.def("log_normal_tail", &cvqp::log_normal_tail, py::arg("z"),
          "log of the upper tail mass, stable far into the tail");
    m.def(
        "prob_error",
        [](const std::vector<std::tuple<double, double, double>>& components,
           bool expected_positive) {
            return cvqp::prob_error(to_mixture(components),
                                    expected_positive ? cvqp::Polarity::positive
                                                      : cvqp::Polarity::nonpositive);
        },
        py::arg("components"), py::arg("expected_positive"),
        "misclassification mass of a (weight, mean, std_dev) mixture");
    m.def(
        "sample_outcomes",
        [](const std::vector<std::tuple<double, double, double>>& components,
           std::uint64_t seed, std::size_t n, std::uint32_t worker) {
            const std::vector<cvqp::OutcomeSample> shots =
                cvqp::sample_outcomes(to_mixture(components), seed, n, worker);
            py::list out;
            for (const cvqp::OutcomeSample& s : shots) {
                out.append(py::make_tuple(s.y, s.activated));
            }
            return out;
        },
        py::arg("components"), py::arg("seed"), py::arg("n"), py::arg("worker") = 0,
        "seeded homodyne shots as (y, activated) tuples");

    m.def("mode_energy", &cvqp::mode_energy, py::arg("x"), py::arg("delta"),
          "mean photon number invested in one encoded mode");
    m.def(
        "width_squared_from_budget",
        [](double total, double displacement) {
            return cvqp::width_squared_from_budget(cvqp::EnergyBudget{total, displacement});
        },
        py::arg("total"), py::arg("displacement"),
        "squared width that spends the rest of a two-mode energy budget");

    m.def(
        "xor_mixture",
        [](double x1, double x2, double delta, double bias) {
            const cvqp::GaussianMixture mix = cvqp::xor_homodyne_mixture(
                cvqp::symmetric_superposition(x1, x2, delta), {1.0, -1.0}, bias);
            py::list out;
            for (const cvqp::MixtureComponent& comp : mix.components()) {
                out.append(py::make_tuple(comp.weight, comp.mean, comp.std_dev));
            }
            return out;
        },
        py::arg("x1"), py::arg("x2"), py::arg("delta"), py::arg("bias") = -1.0,
        "readout mixture of the symmetric two-packet superposition");

    m.def(
        "run_and",
        [](double delta, const std::vector<double>& etas, double bias,
           double displacement) {
            return loads(cvqp::experiment_report_json(
                cvqp::run_and(delta, to_eta_pair(etas), bias, displacement)));
        },
        py::arg("delta"), py::arg("etas") = std::vector<double>{1.0, 1.0},
        py::arg("bias") = -1.0, py::arg("displacement") = 1.0,
        "conjunction experiment report as a dict");
    m.def(
        "run_xor",
        [](double delta, const std::vector<double>& etas, double bias) {
            return loads(cvqp::experiment_report_json(
                cvqp::run_xor(delta, to_eta_pair(etas), bias)));
        },
        py::arg("delta"), py::arg("etas") = std::vector<double>{1.0, -1.0},
        py::arg("bias") = -1.0, "parity experiment report as a dict");
    m.def(
        "train_weights",
        [](const std::string& task, double delta, std::uint64_t seed, double lr,
           std::size_t max_iterations, double tolerance, std::size_t restarts) {
            const cvqp::TruthTable table = task == "and" ? cvqp::TruthTable::and_table()
                                                         : cvqp::TruthTable::xor_table();
            const cvqp::TrainResult result = cvqp::train_weights(
                table, delta, cvqp::TrainConfig{lr, max_iterations, tolerance, restarts},
                seed);
            return loads(cvqp::train_result_json(result, delta, task, seed));
        },
        py::arg("task"), py::arg("delta"), py::arg("seed") = 1, py::arg("lr") = 0.5,
        py::arg("max_iterations") = 2000, py::arg("tolerance") = 1e-9,
        py::arg("restarts") = 4, "gradient-descent fit as a dict");

    m.def(
        "surface_csv",
        [](const std::string& task, double x_min, double x_max, std::size_t x_points,
           double e_min, double e_max, std::size_t e_points) {
            const cvqp::SurfaceGrid grid{x_min, x_max, e_min, e_max, x_points, e_points};
            const cvqp::TradeoffSurface surface =
                task == "and" ? cvqp::and_surface(grid) : cvqp::xor_surface(grid);
            std::ostringstream os;
            cvqp::write_surface_csv(surface, os);
            return os.str();
        },
        py::arg("task"), py::arg("x_min") = 0.0, py::arg("x_max") = 2.0,
        py::arg("x_points") = 121, py::arg("e_min") = 0.0, py::arg("e_max") = 6.0,
        py::arg("e_points") = 121, "error-vs-energy trade-off surface as CSV text");
}
