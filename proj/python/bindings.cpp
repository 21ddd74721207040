#include "shci/confidence.hpp"
#include "shci/config.hpp"
#include "shci/design.hpp"
#include "shci/design_audit.hpp"
#include "shci/errors.hpp"
#include "shci/l0_oracle.hpp"
#include "shci/lasso.hpp"
#include "shci/model.hpp"
#include "shci/simulation.hpp"
#include "shci/sparsity.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace shci;

namespace {

LassoConfig make_lasso(double kappa, double delta, int max_iter, double tol, bool record_trace)
{
    LassoConfig cfg;
    cfg.kappa = kappa;
    cfg.delta = delta;
    cfg.max_iter = max_iter;
    cfg.tol = tol;
    cfg.record_trace = record_trace;
    return cfg;
}

ThresholdSet make_thresholds(double b_hat, double delta, double sigma_sq, double scale)
{
    ThresholdSpec spec;
    spec.delta = delta;
    spec.constant_scale = scale;
    return spec.bind(b_hat, sigma_sq);
}

RegressionSample make_sample(const DesignOperator& x1, const Eigen::VectorXd& y1, const DesignOperator& x2,
                             const Eigen::VectorXd& y2, double sigma_sq)
{
    RegressionSample sample{x1, x2, y1, y2, sigma_sq};
    sample.validate();
    return sample;
}

SimulationConfig make_config(const std::string& preset, const std::map<std::string, std::string>& overrides)
{
    SimulationConfig cfg = preset_by_name(preset);
    for (const auto& [key, value] : overrides) {
        set_config_value(cfg, key, value);
    }
    cfg.validate();
    return cfg;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Honest and adaptive confidence sets for sparse regression";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<DesignOperator>(m, "Design")
        .def_static("dense", [](const Eigen::MatrixXd& x) { return DesignOperator::dense(x); }, py::arg("x"))
        .def_static("partial_fourier", &DesignOperator::partial_fourier, py::arg("p"), py::arg("frequencies"),
                    py::arg("rip") = std::nullopt)
        .def_static("gaussian", &make_gaussian_design, py::arg("n"), py::arg("p"), py::arg("seed"))
        .def_static("random_partial_fourier", &make_partial_fourier_design, py::arg("n"), py::arg("p"),
                    py::arg("seed"))
        .def_property_readonly("rows", &DesignOperator::rows)
        .def_property_readonly("cols", &DesignOperator::cols)
        .def("apply", &DesignOperator::apply, py::arg("u"))
        .def("adjoint", &DesignOperator::adjoint, py::arg("v"))
        .def("materialize", &DesignOperator::materialize);

    py::class_<RipBounds>(m, "RipBounds")
        .def(py::init<>())
        .def_readwrite("c_m", &RipBounds::c_m)
        .def_readwrite("C_M", &RipBounds::C_M)
        .def_readwrite("bar_p", &RipBounds::bar_p);

    py::class_<EstimateReport>(m, "EstimateReport")
        .def_readonly("theta_hat", &EstimateReport::theta_hat)
        .def_readonly("objective", &EstimateReport::objective)
        .def_readonly("iterations", &EstimateReport::iterations)
        .def_readonly("converged", &EstimateReport::converged)
        .def_readonly("l0_count", &EstimateReport::l0_count)
        .def_readonly("objective_trace", &EstimateReport::objective_trace);

    m.def("soft_threshold", &soft_threshold, py::arg("x"), py::arg("t"));
    m.def("ordered_tail_sum", &ordered_tail_sum, py::arg("u"), py::arg("S"));
    m.def("separation_distance", &separation_distance, py::arg("u"), py::arg("S0"));
    m.def("default_kappa", &default_kappa, py::arg("c"), py::arg("C"));
    m.def("lasso_penalty", &lasso_penalty, py::arg("kappa"), py::arg("delta"), py::arg("n"), py::arg("p"));
    m.def("lasso_objective", &lasso_objective, py::arg("design"), py::arg("y"), py::arg("u"), py::arg("penalty"));
    m.def(
        "lasso_fit",
        [](const DesignOperator& design, const Eigen::VectorXd& y, double kappa, double delta, int max_iter,
           double tol, bool record_trace) {
            return lasso_fit(design, y, make_lasso(kappa, delta, max_iter, tol, record_trace));
        },
        py::arg("design"), py::arg("y"), py::arg("kappa") = 1.0, py::arg("delta") = 0.05,
        py::arg("max_iter") = 20000, py::arg("tol") = 1e-12, py::arg("record_trace") = false);
    m.def("l0_oracle_fit", &l0_oracle_fit, py::arg("design"), py::arg("y"), py::arg("kappa"), py::arg("delta"));

    m.def("estimate_b_hat", &estimate_b_hat, py::arg("y_first"), py::arg("delta"));
    m.def(
        "thresholds",
        [](double b_hat, Eigen::Index S, Eigen::Index n, double p, double delta, double sigma_sq, double scale,
           std::optional<Eigen::Index> tail_index) {
            const auto convention = tail_index ? IndexConvention::two_index : IndexConvention::multi_index;
            const auto pair =
                thresholds(make_thresholds(b_hat, delta, sigma_sq, scale), S, n, p, convention, tail_index);
            return py::make_tuple(pair.tau_sq, pair.tau_prime_sq);
        },
        py::arg("b_hat"), py::arg("S"), py::arg("n"), py::arg("p"), py::arg("delta"), py::arg("sigma_sq") = 1.0,
        py::arg("scale") = 1.0, py::arg("tail_index") = std::nullopt,
        "(tau^2, tau'^2); the tail threshold uses tail_index when given, S + 1 otherwise.");
    m.def(
        "ball_radius",
        [](Eigen::Index S, Eigen::Index n, double p, double delta, double scale) {
            return ball_radius(make_thresholds(0.0, delta, 1.0, scale), S, n, p);
        },
        py::arg("S"), py::arg("n"), py::arg("p"), py::arg("delta"), py::arg("scale") = 1.0);
    m.def(
        "rho_margin",
        [](double b_hat, Eigen::Index S0, Eigen::Index S1, Eigen::Index n, double p, double delta, bool multi_index,
           double scale) {
            return rho_margin(b_hat, S0, S1, n, p, delta,
                              multi_index ? IndexConvention::multi_index : IndexConvention::two_index, scale);
        },
        py::arg("b_hat"), py::arg("S0"), py::arg("S1"), py::arg("n"), py::arg("p"), py::arg("delta"),
        py::arg("multi_index") = false, py::arg("scale") = 1.0);

    py::class_<TestReport>(m, "TestReport")
        .def_readonly("r_n", &TestReport::r_n)
        .def_readonly("b_hat", &TestReport::b_hat)
        .def_readonly("tail_stats", &TestReport::tail_stats)
        .def_readonly("tau_sq", &TestReport::tau_sq)
        .def_readonly("tau_prime_sq", &TestReport::tau_prime_sq)
        .def_readonly("psi", &TestReport::psi);

    py::class_<ConfidenceBall>(m, "ConfidenceBall")
        .def_readonly("center", &ConfidenceBall::center)
        .def_readonly("radius", &ConfidenceBall::radius)
        .def_readonly("selected_sparsity", &ConfidenceBall::selected_sparsity)
        .def_readonly("delta", &ConfidenceBall::delta)
        .def("contains", [](const ConfidenceBall& b, const Eigen::VectorXd& u) { return confset_contains(b, u); })
        .def_property_readonly("diameter", &confset_diameter);

    py::class_<ConfidenceResult>(m, "ConfidenceResult")
        .def_readonly("report", &ConfidenceResult::report)
        .def_readonly("ball", &ConfidenceResult::ball)
        .def_readonly("estimate", &ConfidenceResult::estimate);

    m.def(
        "two_index_confset",
        [](const DesignOperator& x1, const Eigen::VectorXd& y1, const DesignOperator& x2, const Eigen::VectorXd& y2,
           double sigma_sq, Eigen::Index S0, Eigen::Index S1, double kappa, double delta, double scale) {
            ThresholdSpec spec;
            spec.delta = delta;
            spec.constant_scale = scale;
            return two_index_confset(make_sample(x1, y1, x2, y2, sigma_sq), S0, S1,
                                     make_lasso(kappa, delta, 20000, 1e-12, false), spec);
        },
        py::arg("x1"), py::arg("y1"), py::arg("x2"), py::arg("y2"), py::arg("sigma_sq"), py::arg("S0"),
        py::arg("S1"), py::arg("kappa"), py::arg("delta") = 0.05, py::arg("scale") = 1.0);
    m.def(
        "multi_index_confset",
        [](const DesignOperator& x1, const Eigen::VectorXd& y1, const DesignOperator& x2, const Eigen::VectorXd& y2,
           double sigma_sq, const std::vector<Eigen::Index>& grid, double kappa, double delta, double scale) {
            ThresholdSpec spec;
            spec.delta = delta;
            spec.constant_scale = scale;
            return multi_index_confset(make_sample(x1, y1, x2, y2, sigma_sq), grid,
                                       make_lasso(kappa, delta, 20000, 1e-12, false), spec);
        },
        py::arg("x1"), py::arg("y1"), py::arg("x2"), py::arg("y2"), py::arg("sigma_sq"), py::arg("grid"),
        py::arg("kappa"), py::arg("delta") = 0.05, py::arg("scale") = 1.0);

    py::class_<DesignAudit>(m, "DesignAudit")
        .def_readonly("c_m", &DesignAudit::c_m_estimate)
        .def_readonly("C_M", &DesignAudit::C_M_estimate)
        .def_readonly("bar_p", &DesignAudit::bar_p)
        .def_readonly("trials", &DesignAudit::trials)
        .def_property_readonly("optimistic", &DesignAudit::optimistic);
    m.def("rip_constants_exact", &rip_constants_exact, py::arg("design"), py::arg("bar_p"));
    m.def("rip_constants_montecarlo", &rip_constants_montecarlo, py::arg("design"), py::arg("bar_p"),
          py::arg("trials"), py::arg("seed"));
    m.def(
        "compatibility_holds",
        [](const DesignOperator& d, Eigen::Index S, double phi_sq, int probes, std::uint64_t seed) {
            return compatibility_check(d, S, phi_sq, probes, seed).holds;
        },
        py::arg("design"), py::arg("S"), py::arg("phi_sq"), py::arg("random_probes") = 10000,
        py::arg("seed") = 0xc0ffee);

    m.def(
        "sample_prior",
        [](const std::string& family, Eigen::Index S0, Eigen::Index S1, Eigen::Index p, Eigen::Index n, double C,
           std::uint64_t seed) {
            PriorSpec spec;
            spec.family = parse_prior_family(family);
            spec.S0 = S0;
            spec.S1 = S1;
            spec.p = p;
            spec.n = n;
            spec.C = C;
            return sample_prior(spec, seed);
        },
        py::arg("family"), py::arg("S0"), py::arg("S1"), py::arg("p"), py::arg("n"), py::arg("C") = 32.0,
        py::arg("seed") = 0);

    py::class_<MetricsRow>(m, "MetricsRow")
        .def_readonly("misclassification", &MetricsRow::misclassification)
        .def_readonly("mean_l0", &MetricsRow::mean_l0)
        .def_readonly("miss_coverage", &MetricsRow::miss_coverage)
        .def_readonly("mean_diameter", &MetricsRow::mean_diameter)
        .def_readonly("mean_risk", &MetricsRow::mean_risk);

    py::class_<ReplicationRecord>(m, "ReplicationRecord")
        .def_readonly("index", &ReplicationRecord::index)
        .def_readonly("label", &ReplicationRecord::label)
        .def_readonly("decision", &ReplicationRecord::decision)
        .def_readonly("selected_sparsity", &ReplicationRecord::selected_sparsity)
        .def_readonly("covered", &ReplicationRecord::covered)
        .def_readonly("diameter", &ReplicationRecord::diameter)
        .def_readonly("risk", &ReplicationRecord::risk)
        .def_readonly("separation", &ReplicationRecord::separation)
        .def_readonly("rho", &ReplicationRecord::rho)
        .def_readonly("acceptance_scale", &ReplicationRecord::acceptance_scale);

    m.def(
        "simulate",
        [](const std::string& preset, const std::map<std::string, std::string>& overrides) {
            const auto cfg = make_config(preset, overrides);
            py::gil_scoped_release release;
            return run_simulation(cfg);
        },
        py::arg("preset") = "desk", py::arg("overrides") = std::map<std::string, std::string>{},
        "Aggregate metrics of a preset with key=value overrides (values as strings).");
    m.def(
        "run_replications",
        [](const std::string& preset, const std::map<std::string, std::string>& overrides) {
            const auto cfg = make_config(preset, overrides);
            py::gil_scoped_release release;
            return run_replications(cfg);
        },
        py::arg("preset") = "desk", py::arg("overrides") = std::map<std::string, std::string>{});

    m.attr("DESK_CONSTANT_SCALE") = kDeskConstantScale;
}
