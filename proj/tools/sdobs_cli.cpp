#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "sdobs/scenario.hpp"

namespace fs = std::filesystem;
using namespace sdobs;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitCertificate = 2;
constexpr int kExitDivergence = 3;

struct CommonOpts {
    std::string config;
    std::string preset_name;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<double> step;
    std::optional<double> t_end;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required) {
    auto* cfg = cmd->add_option("config", opts.config, "scenario config (JSON)");
    if (config_required) cfg->check(CLI::ExistingFile);
    cmd->add_option("--preset", opts.preset_name, "use a shipped preset scenario");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "override schedule/noise seeds");
    cmd->add_option("--step", opts.step, "override integration step");
    cmd->add_option("--t-end", opts.t_end, "override simulation horizon");
}

Scenario resolve_scenario(const CommonOpts& opts) {
    Scenario s;
    if (!opts.config.empty()) s = load_scenario_file(opts.config);
    else if (!opts.preset_name.empty()) s = preset(opts.preset_name);
    else throw ConfigError("no config file and no --preset given");
    if (!opts.preset_name.empty() && !opts.config.empty())
        s = preset(opts.preset_name);  // --preset wins over the file's scenario
    if (opts.seed) {
        if (auto* u = std::get_if<DUniform>(&s.schedule.d)) u->seed = *opts.seed;
        if (auto* u = std::get_if<NoiseUniform>(&s.noise)) u->seed = *opts.seed;
    }
    if (opts.step) s.step = *opts.step;
    if (opts.t_end) s.t_end = *opts.t_end;
    return s;
}

void ensure_out_dir(const std::string& dir) {
    if (!dir.empty() && dir != ".") fs::create_directories(dir);
}

std::string join(const std::string& dir, const std::string& file) {
    return (fs::path(dir) / file).string();
}

int cmd_design(const CommonOpts& opts) {
    const Scenario s = resolve_scenario(opts);
    const DesignReport report = run_design(s);
    std::cout << report.to_text();
    ensure_out_dir(opts.out_dir);
    write_file(join(opts.out_dir, "design.txt"), report.to_text());
    return 0;
}

int cmd_simulate(const CommonOpts& opts) {
    const Scenario s = resolve_scenario(opts);
    const RunResult result = run_scenario(s);
    ensure_out_dir(opts.out_dir);
    if (result.series) {
        write_file(join(opts.out_dir, "errors.csv"), error_series_csv(*result.series));
    } else {
        write_file(join(opts.out_dir, "trajectory.csv"),
                   trajectory_csv(result.trajectory));
        write_file(join(opts.out_dir, "jumps.csv"), jumps_csv(result.trajectory));
    }
    if (result.design) write_file(join(opts.out_dir, "design.txt"), result.design->to_text());
    const std::string metrics =
        metrics_csv(result.metrics, result.certified, result.converged);
    write_file(join(opts.out_dir, "metrics.csv"), metrics);
    std::cout << metrics;
    return 0;
}

int cmd_compare(const CommonOpts& opts) {
    std::vector<Scenario> scenarios;
    if (!opts.config.empty()) scenarios = load_scenario_set(opts.config);
    else if (!opts.preset_name.empty()) scenarios.push_back(preset(opts.preset_name));
    else throw ConfigError("no config file and no --preset given");
    for (Scenario& s : scenarios) {
        if (opts.step) s.step = *opts.step;
        if (opts.t_end) s.t_end = *opts.t_end;
    }
    const auto rows = run_compare(scenarios);
    std::cout << compare_table(rows);
    ensure_out_dir(opts.out_dir);
    write_file(join(opts.out_dir, "compare.csv"), compare_csv(rows));
    return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& r_values) {
    const Scenario base = resolve_scenario(opts);
    std::vector<double> rs;
    std::stringstream ss(r_values);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const double r = std::stod(token);
        if (!(r > 0.0)) throw ConfigError("sweep r values must be positive");
        rs.push_back(r);
    }
    if (rs.empty()) throw ConfigError("no r values given");
    const auto rows = run_sweep(base, rs);
    const std::string csv = sweep_csv(rows);
    std::cout << csv;
    ensure_out_dir(opts.out_dir);
    write_file(join(opts.out_dir, "sweep.csv"), csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sampled-data observer design and simulation bench"};
    app.require_subcommand(1);

    CommonOpts design_opts, sim_opts, cmp_opts, sweep_opts;
    std::string r_values;

    auto* design = app.add_subcommand("design", "compute a design and its certificate");
    add_common(design, design_opts, false);
    auto* simulate = app.add_subcommand("simulate", "run one scenario");
    add_common(simulate, sim_opts, false);
    auto* compare = app.add_subcommand("compare", "run a scenario set side by side");
    add_common(compare, cmp_opts, false);
    auto* sweep = app.add_subcommand("sweep", "sweep the sampling diameter r");
    add_common(sweep, sweep_opts, false);
    sweep->add_option("--r-values", r_values, "comma-separated r values")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (design->parsed()) return cmd_design(design_opts);
        if (simulate->parsed()) return cmd_simulate(sim_opts);
        if (compare->parsed()) return cmd_compare(cmp_opts);
        if (sweep->parsed()) return cmd_sweep(sweep_opts, r_values);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DissipationFailed& e) {
        std::cerr << "certificate failure: " << e.what() << '\n';
        return kExitCertificate;
    } catch (const NotHurwitz& e) {
        std::cerr << "certificate failure: " << e.what() << '\n';
        return kExitCertificate;
    } catch (const ThetaTooSmall& e) {
        std::cerr << "certificate failure: " << e.what() << '\n';
        return kExitCertificate;
    } catch (const NonFiniteState& e) {
        std::cerr << "simulation divergence: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
