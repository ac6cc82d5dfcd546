#pragma once

#include <map>
#include <string>

#include "sdobs/csv.hpp"
#include "sdobs/metrics.hpp"

namespace sdobs {

struct HighGainSpec {
    std::vector<linalg::Complex> poles;
    double mu = 1.0;
    std::optional<double> theta;
};

struct LinearSpec {
    Vector gain;
    std::optional<double> mu;
    std::optional<double> gamma;
    std::optional<Matrix> p;
};

struct DesignSpec {
    bool is_highgain = false;
    HighGainSpec highgain;
    LinearSpec linear;
};

enum class ObserverMode { SampledData, Continuous, Zoh, Discrete };

struct ObserverSpec {
    ObserverMode mode = ObserverMode::SampledData;
    DesignSpec design;  // SampledData / Continuous / Zoh
    double discrete_period = 0.0;
    std::vector<linalg::Complex> discrete_targets;
};

struct ScheduleSpec {
    double r = 0.081;
    DSource d = DZero{};
};

struct Scenario {
    std::string name;
    std::string plant_key = "oscillator";  // registry key
    std::optional<LinearKind> inline_linear;
    ObserverSpec observer;
    ScheduleSpec schedule;
    NoiseKind noise = NoiseZero{};
    Vector x0;
    Vector z0;
    double w0 = 0.0;
    std::optional<double> step;  // default min(r/20, 1e-3)
    double t_end = 60.0;
    int output_stride = 10;
    double window_fraction = 0.25;
    double tolerance = 1e-3;
    bool stale_reset = false;

    double effective_step() const;
};

/// Design constants as reported alongside every run.
struct DesignReport {
    bool is_highgain = false;
    Vector gain;
    double theta = 0.0;
    Matrix lyap_p;
    double mu = 0.0;
    double gamma = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double mismatch = 0.0;
    double r_max = 0.0;  // kUnboundedSentinel when unbounded

    std::string to_text() const;
};

struct RunResult {
    std::optional<DesignReport> design;
    HybridTrajectory trajectory;                  // empty for discrete runs
    std::optional<SampledErrorSeries> series;     // discrete runs
    Metrics metrics;
    bool certified = false;  // schedule r < r_max
    bool converged = false;  // max tail amplitude < tolerance
};

Plant resolve_plant(const Scenario& s);

/// Builds the design for a scenario (SampledData / Continuous / Zoh modes).
DesignReport run_design(const Scenario& s, ContinuousObserver* observer_out = nullptr);

RunResult run_scenario(const Scenario& s);

struct SweepRow {
    double r = 0.0;
    std::string observer;  // "sampled-data" | "zoh"
    bool certified = false;
    bool converged = false;
    bool failed = false;  // simulation diverged or errored
    double tail_amplitude = 0.0;  // max over components
};

std::vector<SweepRow> run_sweep(const Scenario& base, const std::vector<double>& r_values);
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct CompareRow {
    std::string name;
    std::string observer;
    double tail_amplitude = 0.0;
    std::optional<double> convergence_time;
    double sup_error = 0.0;
    bool certified = false;
    bool converged = false;
};

std::vector<CompareRow> run_compare(const std::vector<Scenario>& scenarios);
std::string compare_csv(const std::vector<CompareRow>& rows);
std::string compare_table(const std::vector<CompareRow>& rows);

std::string metrics_csv(const Metrics& m, bool certified, bool converged);

// Scenario presets shipped with the tool: fig2..fig7, oscillator-paper,
// highgain-demo.
std::vector<std::string> preset_names();
Scenario preset(const std::string& name);

Scenario parse_scenario_json(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);
std::vector<Scenario> load_scenario_set(const std::string& path);

}  // namespace sdobs
