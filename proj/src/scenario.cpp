#include "sdobs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace sdobs {

using nlohmann::json;

double Scenario::effective_step() const {
    if (step) return *step;
    if (observer.mode == ObserverMode::Continuous) return 1e-3;
    return std::min(schedule.r / 20.0, 1e-3);
}

Plant resolve_plant(const Scenario& s) {
    if (s.inline_linear) return make_linear_plant(s.inline_linear->a, s.inline_linear->c);
    if (s.plant_key == "oscillator") return oscillator_preset();
    if (s.plant_key == "double-integrator") return double_integrator_preset();
    if (s.plant_key == "sin-triangular") return sin_triangular_preset();
    throw ConfigError("unknown plant key: " + s.plant_key);
}

namespace {

std::string r_max_text(double r_max) {
    return r_max == kUnboundedSentinel ? std::string("unbounded") : format_double(r_max);
}

Vector default_x0(int n) {
    Vector x = Vector::Zero(n);
    x(n - 1) = 2.0;
    return x;
}

DesignReport report_from(const HighGainDesign& d) {
    DesignReport r;
    r.is_highgain = true;
    r.gain = d.gain;
    r.theta = d.theta;
    r.lyap_p = d.lyap_p;
    r.mu = d.mu;
    r.k1 = d.k1;
    r.k2 = d.k2;
    r.mismatch = d.mismatch;
    r.r_max = d.r_max;
    return r;
}

DesignReport report_from(const LinearDesign& d) {
    DesignReport r;
    r.gain = d.gain;
    r.lyap_p = d.lyap_p;
    r.mu = d.mu;
    r.gamma = d.gamma;
    r.k1 = d.k1;
    r.k2 = d.k2;
    r.mismatch = d.mismatch;
    r.r_max = d.r_max;
    return r;
}

}  // namespace

std::string DesignReport::to_text() const {
    std::ostringstream out;
    out << "design: " << (is_highgain ? "highgain" : "linear") << '\n';
    out << "k:";
    for (Eigen::Index i = 0; i < gain.size(); ++i) out << ' ' << format_double(gain(i));
    out << '\n';
    if (is_highgain) out << "theta: " << format_double(theta) << '\n';
    out << "P:\n";
    for (Eigen::Index i = 0; i < lyap_p.rows(); ++i) {
        out << " ";
        for (Eigen::Index j = 0; j < lyap_p.cols(); ++j)
            out << ' ' << format_double(lyap_p(i, j));
        out << '\n';
    }
    out << "mu: " << format_double(mu) << '\n';
    if (!is_highgain) out << "gamma: " << format_double(gamma) << '\n';
    out << "K1: " << format_double(k1) << '\n';
    out << "K2: " << format_double(k2) << '\n';
    out << "K: " << format_double(mismatch) << '\n';
    out << "r_max: " << r_max_text(r_max) << '\n';
    return out.str();
}

DesignReport run_design(const Scenario& s, ContinuousObserver* observer_out) {
    const Plant plant = resolve_plant(s);
    const DesignSpec& spec = s.observer.design;
    if (s.observer.mode == ObserverMode::Discrete)
        throw ConfigError("run_design: discrete baseline has no continuous-time certificate");
    if (spec.is_highgain) {
        HighGainDesign d =
            design_highgain(plant, spec.highgain.poles, spec.highgain.mu, spec.highgain.theta);
        if (observer_out) *observer_out = d.observer;
        return report_from(d);
    }
    LinearDesign d =
        (spec.linear.mu && spec.linear.gamma)
            ? design_linear(plant, spec.linear.gain, *spec.linear.mu, *spec.linear.gamma,
                            spec.linear.p)
            : design_linear_auto(plant, spec.linear.gain);
    if (observer_out) *observer_out = d.observer;
    return report_from(d);
}

RunResult run_scenario(const Scenario& s) {
    const Plant plant = resolve_plant(s);
    const int n = plant.n;
    const Vector x0 = s.x0.size() ? s.x0 : default_x0(n);
    const Vector z0 = s.z0.size() ? s.z0 : Vector::Ones(n);
    const double step = s.effective_step();

    RunResult result;

    if (s.observer.mode == ObserverMode::Discrete) {
        if (!plant.is_linear())
            throw ConfigError("discrete baseline requires a linear plant");
        const auto dd = design_discrete_observer(plant.linear().a, plant.linear().c,
                                                 s.observer.discrete_period,
                                                 s.observer.discrete_targets);
        const auto schedule = generate_schedule(s.schedule.r, s.schedule.d, s.t_end);
        result.series = simulate_discrete_observer(plant, dd, schedule, x0, z0);
        result.metrics = compute_metrics(*result.series, s.window_fraction, s.tolerance);
    } else {
        ContinuousObserver observer;
        result.design = run_design(s, &observer);

        if (s.observer.mode == ObserverMode::Continuous) {
            double level = 0.0;
            if (const auto* c = std::get_if<NoiseConstant>(&s.noise)) level = c->level;
            else if (!std::holds_alternative<NoiseZero>(s.noise))
                throw ConfigError("continuous baseline supports zero or constant noise only");
            result.trajectory = simulate_continuous(
                plant, observer, [level](double) { return level; }, x0, z0, step, s.t_end,
                s.output_stride);
        } else {
            const auto schedule = generate_schedule(s.schedule.r, s.schedule.d, s.t_end);
            const NoiseSignal noise{s.noise};
            SimulationOptions options;
            options.output_stride = s.output_stride;
            options.stale_reset = s.stale_reset;
            if (s.observer.mode == ObserverMode::Zoh) {
                result.trajectory = simulate_zoh(plant, observer, schedule, noise, x0, z0,
                                                 step, s.t_end, options);
            } else {
                result.trajectory = simulate_sampled_data(plant, observer, schedule, noise,
                                                          x0, z0, s.w0, step, s.t_end,
                                                          options);
            }
            result.certified = s.observer.mode == ObserverMode::SampledData &&
                               s.schedule.r < result.design->r_max;
        }
        if (result.trajectory.diverged)
            throw NonFiniteState("run_scenario: simulation diverged");
        result.metrics = compute_metrics(result.trajectory, s.window_fraction, s.tolerance);
    }

    const double max_amp = result.metrics.tail_amplitude.empty()
                               ? 0.0
                               : *std::max_element(result.metrics.tail_amplitude.begin(),
                                                   result.metrics.tail_amplitude.end());
    result.converged = max_amp < s.tolerance;
    return result;
}

std::vector<SweepRow> run_sweep(const Scenario& base, const std::vector<double>& r_values) {
    std::vector<double> rs = r_values;
    std::sort(rs.begin(), rs.end());
    std::vector<SweepRow> rows;
    for (double r : rs) {
        for (const char* kind : {"sampled-data", "zoh"}) {
            Scenario s = base;
            s.schedule.r = r;
            s.step.reset();
            s.observer.mode = kind == std::string("zoh") ? ObserverMode::Zoh
                                                         : ObserverMode::SampledData;
            SweepRow row;
            row.r = r;
            row.observer = kind;
            try {
                RunResult res = run_scenario(s);
                row.certified = res.certified;
                row.converged = res.converged;
                row.tail_amplitude = *std::max_element(res.metrics.tail_amplitude.begin(),
                                                       res.metrics.tail_amplitude.end());
            } catch (const Error&) {
                row.failed = true;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "r,observer,certified,converged,failed,tail_amplitude\n";
    for (const auto& row : rows)
        out << format_double(row.r) << ',' << row.observer << ',' << row.certified << ','
            << row.converged << ',' << row.failed << ','
            << format_double(row.tail_amplitude) << '\n';
    return out.str();
}

namespace {

std::string observer_label(const Scenario& s) {
    switch (s.observer.mode) {
        case ObserverMode::SampledData: return "sampled-data";
        case ObserverMode::Continuous: return "continuous";
        case ObserverMode::Zoh: return "zoh";
        case ObserverMode::Discrete: return "discrete";
    }
    return "?";
}

}  // namespace

std::vector<CompareRow> run_compare(const std::vector<Scenario>& scenarios) {
    if (scenarios.empty()) throw ConfigError("run_compare: empty scenario set");
    for (const Scenario& s : scenarios) {
        if (s.plant_key != scenarios.front().plant_key ||
            s.inline_linear.has_value() != scenarios.front().inline_linear.has_value())
            throw IncompatibleScenarios("run_compare: scenarios use different plants");
        if (s.x0.size() != scenarios.front().x0.size() ||
            (s.x0.size() && s.x0 != scenarios.front().x0))
            throw IncompatibleScenarios("run_compare: scenarios use different x0");
    }
    std::vector<CompareRow> rows;
    for (const Scenario& s : scenarios) {
        RunResult res = run_scenario(s);
        CompareRow row;
        row.name = s.name;
        row.observer = observer_label(s);
        row.tail_amplitude = *std::max_element(res.metrics.tail_amplitude.begin(),
                                               res.metrics.tail_amplitude.end());
        row.convergence_time = res.metrics.convergence_time;
        row.sup_error = res.metrics.sup_error;
        row.certified = res.certified;
        row.converged = res.converged;
        rows.push_back(row);
    }
    return rows;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
    std::ostringstream out;
    out << "name,observer,tail_amplitude,convergence_time,sup_error,certified,converged\n";
    for (const auto& row : rows)
        out << row.name << ',' << row.observer << ',' << format_double(row.tail_amplitude)
            << ','
            << (row.convergence_time ? format_double(*row.convergence_time)
                                     : std::string("never"))
            << ',' << format_double(row.sup_error) << ',' << row.certified << ','
            << row.converged << '\n';
    return out.str();
}

std::string compare_table(const std::vector<CompareRow>& rows) {
    std::ostringstream out;
    out << std::left << std::setw(18) << "name" << std::setw(14) << "observer"
        << std::setw(16) << "tail_amp" << std::setw(14) << "conv_time" << std::setw(16)
        << "sup_error" << std::setw(10) << "certified" << "converged\n";
    for (const auto& row : rows) {
        std::ostringstream amp, conv, sup;
        amp << std::setprecision(6) << row.tail_amplitude;
        sup << std::setprecision(6) << row.sup_error;
        if (row.convergence_time) conv << std::setprecision(6) << *row.convergence_time;
        else conv << "never";
        out << std::left << std::setw(18) << row.name << std::setw(14) << row.observer
            << std::setw(16) << amp.str() << std::setw(14) << conv.str() << std::setw(16)
            << sup.str() << std::setw(10) << (row.certified ? "yes" : "no")
            << (row.converged ? "yes" : "no") << '\n';
    }
    return out.str();
}

std::string metrics_csv(const Metrics& m, bool certified, bool converged) {
    std::ostringstream out;
    out << "metric,value\n";
    for (std::size_t i = 0; i < m.tail_amplitude.size(); ++i)
        out << "tail_amplitude_e" << (i + 1) << ',' << format_double(m.tail_amplitude[i])
            << '\n';
    out << "convergence_time,"
        << (m.convergence_time ? format_double(*m.convergence_time) : std::string("never"))
        << '\n';
    out << "sup_error," << format_double(m.sup_error) << '\n';
    out << "certified," << certified << '\n';
    out << "converged," << converged << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// presets

namespace {

LinearSpec oscillator_paper_spec() {
    LinearSpec spec;
    spec.gain = Vector(2);
    spec.gain << -4.0, 0.0;
    spec.mu = 1.0;
    spec.gamma = 64.0 / 3.0;
    Matrix p(2, 2);
    p << 2.5, -1.0, -1.0, 0.5;
    spec.p = p;
    return spec;
}

Scenario oscillator_base() {
    Scenario s;
    s.plant_key = "oscillator";
    s.observer.design.is_highgain = false;
    s.observer.design.linear = oscillator_paper_spec();
    s.x0 = Vector(2);
    s.x0 << 0.0, 2.0;
    s.z0 = Vector(2);
    s.z0 << 1.0, 1.0;
    s.w0 = 0.0;
    s.t_end = 60.0;
    return s;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "oscillator-paper",
            "highgain-demo"};
}

Scenario preset(const std::string& name) {
    if (name == "oscillator-paper") {
        Scenario s = oscillator_base();
        s.name = name;
        s.observer.mode = ObserverMode::SampledData;
        s.schedule.r = 0.081;
        return s;
    }
    if (name == "fig2") {
        Scenario s = oscillator_base();
        s.name = name;
        s.observer.mode = ObserverMode::Continuous;
        return s;
    }
    if (name == "fig3" || name == "fig5") {
        Scenario s = oscillator_base();
        s.name = name;
        s.observer.mode = ObserverMode::Zoh;
        s.schedule.r = name == "fig3" ? 0.081 : 0.45;
        return s;
    }
    if (name == "fig4" || name == "fig6") {
        Scenario s = oscillator_base();
        s.name = name;
        s.observer.mode = ObserverMode::SampledData;
        s.schedule.r = name == "fig4" ? 0.081 : 0.45;
        return s;
    }
    if (name == "fig7") {
        Scenario s = oscillator_base();
        s.name = name;
        s.observer.mode = ObserverMode::Discrete;
        s.observer.discrete_period = 0.075;
        s.observer.discrete_targets = {0.8, 0.8};
        s.schedule.r = 0.081;
        return s;
    }
    if (name == "highgain-demo") {
        Scenario s;
        s.name = name;
        s.plant_key = "sin-triangular";
        s.observer.mode = ObserverMode::SampledData;
        s.observer.design.is_highgain = true;
        s.observer.design.highgain.poles = {-2.0, -2.0};
        s.observer.design.highgain.mu = 1.0;
        s.schedule.r = 0.0015;  // inside the certificate for this design
        s.x0 = Vector(2);
        s.x0 << 0.0, 2.0;
        s.z0 = Vector(2);
        s.z0 << 1.0, 1.0;
        s.w0 = 0.0;
        s.t_end = 30.0;
        return s;
    }
    throw ConfigError("unknown preset: " + name);
}

// ---------------------------------------------------------------------------
// JSON parsing

namespace {

Vector parse_vector(const json& j) {
    Vector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
    return v;
}

Matrix parse_matrix(const json& j) {
    const auto rows = j.size();
    if (rows == 0) throw ConfigError("empty matrix");
    const auto cols = j[0].size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw ConfigError("ragged matrix");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

std::vector<linalg::Complex> parse_targets(const json& j) {
    std::vector<linalg::Complex> out;
    for (const auto& item : j) {
        if (item.is_array())
            out.emplace_back(item[0].get<double>(), item[1].get<double>());
        else
            out.emplace_back(item.get<double>(), 0.0);
    }
    return out;
}

DSource parse_d(const json& j) {
    if (j.is_string()) {
        if (j == "zero") return DZero{};
        throw ConfigError("unknown schedule perturbation: " + j.get<std::string>());
    }
    if (j.contains("constant")) return DConstant{j["constant"].get<double>()};
    if (j.contains("uniform"))
        return DUniform{j["uniform"].get<double>(),
                        j.value("seed", std::uint64_t{0})};
    throw ConfigError("bad schedule perturbation spec");
}

NoiseKind parse_noise(const json& j) {
    if (j.is_string()) {
        if (j == "zero") return NoiseZero{};
        throw ConfigError("unknown noise kind: " + j.get<std::string>());
    }
    if (j.contains("constant")) return NoiseConstant{j["constant"].get<double>()};
    if (j.contains("uniform"))
        return NoiseUniform{j["uniform"].get<double>(), j.value("seed", std::uint64_t{0})};
    if (j.contains("samples")) {
        NoiseCustom c;
        for (const auto& s : j["samples"]) c.samples.push_back(s.get<double>());
        return c;
    }
    throw ConfigError("bad noise spec");
}

void apply_json(Scenario& s, const json& j) {
    if (j.contains("name")) s.name = j["name"].get<std::string>();
    if (j.contains("plant")) {
        const auto& p = j["plant"];
        if (p.is_string()) {
            s.plant_key = p.get<std::string>();
            s.inline_linear.reset();
        } else {
            s.inline_linear = LinearKind{parse_matrix(p.at("A")), parse_vector(p.at("c"))};
            s.plant_key = "inline-linear";
        }
    }
    if (j.contains("observer")) {
        const auto& o = j["observer"];
        const std::string type = o.at("type").get<std::string>();
        if (type == "highgain") s.observer.mode = ObserverMode::SampledData;
        else if (type == "linear") s.observer.mode = ObserverMode::SampledData;
        else if (type == "continuous") s.observer.mode = ObserverMode::Continuous;
        else if (type == "zoh") s.observer.mode = ObserverMode::Zoh;
        else if (type == "discrete") s.observer.mode = ObserverMode::Discrete;
        else throw ConfigError("unknown observer type: " + type);

        if (type == "discrete") {
            s.observer.discrete_period = o.at("T").get<double>();
            s.observer.discrete_targets = parse_targets(o.at("targets"));
        } else if (type == "highgain" || o.contains("poles")) {
            s.observer.design.is_highgain = true;
            s.observer.design.highgain.poles = parse_targets(o.at("poles"));
            s.observer.design.highgain.mu = o.value("mu", 1.0);
            if (o.contains("theta"))
                s.observer.design.highgain.theta = o["theta"].get<double>();
        } else {
            s.observer.design.is_highgain = false;
            if (o.contains("k")) s.observer.design.linear.gain = parse_vector(o["k"]);
            if (o.contains("mu")) s.observer.design.linear.mu = o["mu"].get<double>();
            if (o.contains("gamma"))
                s.observer.design.linear.gamma = o["gamma"].get<double>();
            if (o.contains("P")) s.observer.design.linear.p = parse_matrix(o["P"]);
        }
    }
    if (j.contains("schedule")) {
        const auto& sch = j["schedule"];
        if (sch.contains("r")) s.schedule.r = sch["r"].get<double>();
        if (sch.contains("d")) s.schedule.d = parse_d(sch["d"]);
    }
    if (j.contains("noise")) s.noise = parse_noise(j["noise"]);
    if (j.contains("x0")) s.x0 = parse_vector(j["x0"]);
    if (j.contains("z0")) s.z0 = parse_vector(j["z0"]);
    if (j.contains("w0")) s.w0 = j["w0"].get<double>();
    if (j.contains("step")) s.step = j["step"].get<double>();
    if (j.contains("t_end")) s.t_end = j["t_end"].get<double>();
    if (j.contains("output_stride")) s.output_stride = j["output_stride"].get<int>();
    if (j.contains("window_fraction"))
        s.window_fraction = j["window_fraction"].get<double>();
    if (j.contains("tolerance")) s.tolerance = j["tolerance"].get<double>();
    if (j.contains("stale_reset")) s.stale_reset = j["stale_reset"].get<bool>();

    if (!(s.schedule.r > 0.0)) throw ConfigError("schedule r must be positive");
    if (s.step && !(*s.step > 0.0)) throw ConfigError("step must be positive");
    if (!(s.window_fraction > 0.0 && s.window_fraction < 1.0))
        throw ConfigError("window_fraction must be in (0, 1)");
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    if (j.contains("preset")) s = preset(j["preset"].get<std::string>());
    apply_json(s, j);
    return s;
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

Scenario parse_scenario_json(const std::string& json_text) {
    return scenario_from_json(parse_text(json_text));
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_scenario_json(buf.str());
}

std::vector<Scenario> load_scenario_set(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    const json j = parse_text(buf.str());
    std::vector<Scenario> out;
    if (j.contains("scenarios")) {
        for (const auto& item : j["scenarios"]) {
            if (item.is_string()) out.push_back(preset(item.get<std::string>()));
            else out.push_back(scenario_from_json(item));
        }
    } else {
        out.push_back(scenario_from_json(j));
    }
    return out;
}

}  // namespace sdobs
