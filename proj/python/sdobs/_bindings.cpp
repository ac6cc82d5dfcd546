#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "sdobs/scenario.hpp"

namespace py = pybind11;
using namespace sdobs;

namespace {

Scenario scenario_from(const std::string& config) {
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), config) != names.end())
        return preset(config);
    return parse_scenario_json(config);
}

struct RunSummary {
    std::vector<double> times;
    Matrix error;  // rows follow times; discrete runs use the sample instants
    Metrics metrics;
    bool certified = false;
    bool converged = false;
};

RunSummary summarize(const std::string& config) {
    const RunResult res = run_scenario(scenario_from(config));
    RunSummary out;
    out.metrics = res.metrics;
    out.certified = res.certified;
    out.converged = res.converged;
    if (res.series) {
        out.times = res.series->instants;
        out.error.resize(static_cast<Eigen::Index>(res.series->errors.size()),
                         res.series->errors.empty() ? 0 : res.series->errors[0].size());
        for (std::size_t i = 0; i < res.series->errors.size(); ++i)
            out.error.row(static_cast<Eigen::Index>(i)) = res.series->errors[i];
    } else {
        out.times = res.trajectory.times;
        out.error.resize(static_cast<Eigen::Index>(res.trajectory.error.size()),
                         res.trajectory.error.empty() ? 0 : res.trajectory.error[0].size());
        for (std::size_t i = 0; i < res.trajectory.error.size(); ++i)
            out.error.row(static_cast<Eigen::Index>(i)) = res.trajectory.error[i];
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_sdobs, m) {
    m.doc() = "sampled-data observer design and simulation bench";

    py::register_exception<Error>(m, "SdobsError");

    m.def("solve_lyapunov",
          [](const Matrix& a_cl, const Matrix& q) { return linalg::solve_lyapunov(a_cl, q); },
          py::arg("a_cl"), py::arg("q"));
    m.def("place_poles_continuous",
          [](const Matrix& a, const Vector& c, const std::vector<linalg::Complex>& poles) {
              return linalg::place_poles_continuous(a, c, poles);
          },
          py::arg("a"), py::arg("c"), py::arg("poles"));
    m.def("place_poles_discrete",
          [](const Matrix& a, const Vector& c, const std::vector<linalg::Complex>& poles) {
              return linalg::place_poles_discrete(a, c, poles);
          },
          py::arg("a"), py::arg("c"), py::arg("poles"));
    m.def("expm", [](const Matrix& a, double t) { return linalg::expm(a, t); },
          py::arg("a"), py::arg("t") = 1.0);
    m.def("induced_norm", [](const Matrix& m_) { return linalg::induced_norm(m_); },
          py::arg("m"));
    m.def("verify_dissipation",
          [](const Matrix& p, const Matrix& a, const Vector& k, const Vector& c, double mu,
             double gamma) { return verify_dissipation(p, a, k, c, mu, gamma); },
          py::arg("p"), py::arg("a"), py::arg("k"), py::arg("c"), py::arg("mu"),
          py::arg("gamma"));

    py::class_<DesignReport>(m, "DesignReport")
        .def_readonly("is_highgain", &DesignReport::is_highgain)
        .def_readonly("gain", &DesignReport::gain)
        .def_readonly("theta", &DesignReport::theta)
        .def_readonly("lyap_p", &DesignReport::lyap_p)
        .def_readonly("mu", &DesignReport::mu)
        .def_readonly("gamma", &DesignReport::gamma)
        .def_readonly("k1", &DesignReport::k1)
        .def_readonly("k2", &DesignReport::k2)
        .def_readonly("mismatch", &DesignReport::mismatch)
        .def_readonly("r_max", &DesignReport::r_max)
        .def("__repr__", [](const DesignReport& r) { return r.to_text(); });

    py::class_<Metrics>(m, "Metrics")
        .def_readonly("tail_amplitude", &Metrics::tail_amplitude)
        .def_readonly("convergence_time", &Metrics::convergence_time)
        .def_readonly("sup_error", &Metrics::sup_error);

    py::class_<RunSummary>(m, "RunSummary")
        .def_readonly("times", &RunSummary::times)
        .def_readonly("error", &RunSummary::error)
        .def_readonly("metrics", &RunSummary::metrics)
        .def_readonly("certified", &RunSummary::certified)
        .def_readonly("converged", &RunSummary::converged);

    m.def("preset_names", &preset_names);
    m.def("design", [](const std::string& config) { return run_design(scenario_from(config)); },
          py::arg("config"), "Design report for a preset name or a scenario JSON string.");
    m.def("simulate", &summarize, py::arg("config"),
          "Run a preset name or a scenario JSON string and return times, errors, metrics.");
    m.def("sweep",
          [](const std::string& config, const std::vector<double>& rs) {
              py::list out;
              for (const auto& row : run_sweep(scenario_from(config), rs)) {
                  py::dict d;
                  d["r"] = row.r;
                  d["observer"] = row.observer;
                  d["certified"] = row.certified;
                  d["converged"] = row.converged;
                  d["failed"] = row.failed;
                  d["tail_amplitude"] = row.tail_amplitude;
                  out.append(d);
              }
              return out;
          },
          py::arg("config"), py::arg("r_values"));
}
