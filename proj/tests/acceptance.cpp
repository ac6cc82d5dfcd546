// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "sdobs/scenario.hpp"

using namespace sdobs;

namespace {

int failures = 0;

void report(int criterion, const char* label, bool ok, const std::string& detail = "") {
    std::printf("%-4s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, label,
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vector paper_x0() {
    Vector x(2);
    x << 0.0, 2.0;
    return x;
}

Vector paper_z0() {
    Vector z(2);
    z << 1.0, 1.0;
    return z;
}

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const Scenario s = preset("oscillator-paper");
    const DesignReport d = run_design(s);
    const Plant plant = resolve_plant(s);
    const bool dissipation = verify_dissipation(d.lyap_p, plant.linear().a, d.gain,
                                                plant.linear().c, d.mu, d.gamma);
    const double elapsed = seconds_since(t0);
    const bool ok =
        d.r_max >= 0.089 && d.r_max <= 0.0898 && dissipation && elapsed < 1.0;
    report(1, "oscillator certificate r_max in [0.089, 0.0898]", ok,
           "r_max = " + format_double(d.r_max));
}

void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult res = run_scenario(preset("fig4"));
    const double amp = res.metrics.tail_amplitude[1];
    const double elapsed = seconds_since(t0);
    report(2, "sampled-data r = 0.081 tail amplitude of e2 < 1e-3",
           amp < 1e-3 && elapsed < 5.0,
           "amplitude = " + format_double(amp) + ", " + format_double(elapsed) + " s");
}

void criterion_3() {
    const RunResult res = run_scenario(preset("fig3"));
    const double amp = res.metrics.tail_amplitude[1];
    report(3, "ZOH r = 0.081 tail amplitude of e2 in [0.10, 0.20]",
           amp >= 0.10 && amp <= 0.20, "amplitude = " + format_double(amp));
}

void criterion_4() {
    const double sd = run_scenario(preset("fig6")).metrics.tail_amplitude[1];
    const double zoh = run_scenario(preset("fig5")).metrics.tail_amplitude[1];
    report(4, "r = 0.45: sampled-data < 0.02, ZOH > 0.5", sd < 0.02 && zoh > 0.5,
           "sampled-data = " + format_double(sd) + ", zoh = " + format_double(zoh));
}

void criterion_5() {
    const Plant plant = oscillator_preset();
    const auto d =
        design_discrete_observer(plant.linear().a, plant.linear().c, 0.075, {0.8, 0.8});
    const bool gains_ok = std::abs(d.gain(0) - (-0.37754)) < 1e-4 &&
                          std::abs(d.gain(1) - (-0.17804)) < 1e-4;

    const auto mismatched = simulate_discrete_observer(
        plant, d, uniform_schedule(0.081, 60.0), paper_x0(), paper_z0());
    const double amp = compute_metrics(mismatched, 0.25, 1e-3).tail_amplitude[1];

    const auto matched = simulate_discrete_observer(plant, d, uniform_schedule(0.075, 10.0),
                                                    paper_x0(), paper_z0());
    bool decayed = matched.errors.size() > 100;
    for (std::size_t k = 100; decayed && k < matched.errors.size(); ++k)
        if (matched.errors[k].norm() >= 1e-6) decayed = false;

    report(5, "discrete baseline: mismatch amplitude > 0.21, matched decay by k = 100",
           gains_ok && amp > 0.21 && decayed, "amplitude = " + format_double(amp));
}

void criterion_6() {
    // Exact-init invariance for every shipped flow-observer preset (fig7 is the
    // discrete baseline and has no continuous estimate to hold invariant; the
    // ZOH presets break the invariant by construction and are compared through
    // their sampled-data twins fig4/fig6).
    bool ok = true;
    std::string worst;
    for (const std::string& name :
         {std::string("fig2"), std::string("fig4"), std::string("fig6"),
          std::string("oscillator-paper"), std::string("highgain-demo")}) {
        Scenario s = preset(name);
        s.t_end = 30.0;
        const Plant plant = resolve_plant(s);
        s.x0 = s.x0.size() ? s.x0 : Vector::Zero(plant.n);
        s.z0 = s.x0;
        s.w0 = plant.h(s.x0);
        s.noise = NoiseZero{};
        const RunResult res = run_scenario(s);
        double sup = 0.0;
        for (const auto& e : res.trajectory.error) sup = std::max(sup, e.norm());
        if (sup > 1e-8) {
            ok = false;
            worst += name + " sup = " + format_double(sup) + "; ";
        }
    }
    report(6, "exact init keeps sup |Psi(z) - x| <= 1e-8 on all presets", ok, worst);
}

void criterion_7() {
    const Scenario base = preset("oscillator-paper");
    const DesignReport d = run_design(base);
    const double gain = std::sqrt(d.gamma / (2.0 * d.mu * d.k1));
    bool ok = true;
    std::string detail;
    for (double vbar : {0.05, 0.1, 0.2}) {
        Scenario s = preset("fig2");
        s.noise = NoiseConstant{vbar};
        s.t_end = 40.0;
        const RunResult res = run_scenario(s);
        double tail = 0.0;
        for (std::size_t i = 0; i < res.trajectory.size(); ++i)
            if (res.trajectory.times[i] >= 30.0)
                tail = std::max(tail, res.trajectory.error[i].norm());
        if (tail > gain * vbar * 1.1) ok = false;
        detail += format_double(tail) + "<=" + format_double(gain * vbar * 1.1) + " ";
    }
    report(7, "continuous-observer noise gain within the Lyapunov bound", ok, detail);
}

void criterion_8() {
    const Plant plant = sin_triangular_preset();
    const HighGainDesign d = design_highgain(plant, {-2.0, -2.0}, 1.0);
    const auto traj = simulate_continuous(
        plant, d.observer, [](double) { return 0.0; }, paper_x0(), paper_z0(), 1e-4, 10.0);

    const double p_norm = linalg::induced_norm(d.lyap_p);
    Matrix delta_inv = Matrix::Zero(2, 2);
    delta_inv(0, 0) = 1.0 / d.theta;
    delta_inv(1, 1) = 1.0 / (d.theta * d.theta);
    const Matrix v_mat = delta_inv * d.lyap_p * delta_inv;

    const double v0 = traj.error.front().dot(v_mat * traj.error.front());
    bool ok = true;
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double v = traj.error[i].dot(v_mat * traj.error[i]);
        const double envelope =
            v0 * std::exp(-d.theta * d.mu * traj.times[i] / p_norm) * 1.001;
        if (v > envelope) ok = false;
        if (envelope > 0.0) worst_ratio = std::max(worst_ratio, v / envelope);
    }
    report(8, "high-gain Lyapunov decay V(e(t)) within the certified envelope", ok,
           "worst ratio = " + format_double(worst_ratio));
}

void criterion_9() {
    bool ok = true;
    std::string detail;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Scenario s = preset("fig4");
        s.schedule.d = DUniform{std::log(2.0), seed};
        const RunResult res = run_scenario(s);
        const double amp = res.metrics.tail_amplitude[1];
        if (amp >= 1e-3) {
            ok = false;
            detail += "seed " + std::to_string(seed) + ": " + format_double(amp) + "; ";
        }
    }
    report(9, "perturbed schedules over 10 seeds keep the fig4 threshold", ok, detail);
}

void criterion_10() {
    bool ok = true;
    std::string detail;

    // RK4 observed order >= 3.5 on the oscillator
    {
        const Plant p = oscillator_preset();
        auto rate = [&](double, const Vector& x) { return p.f(x); };
        const Vector exact = linalg::expm(p.linear().a, 2.0) * paper_x0();
        std::vector<double> errs;
        for (double step : {2e-2, 1e-2}) {
            const auto series = integrate_segment(rate, paper_x0(), 0.0, 2.0, step);
            errs.push_back((series.back().state - exact).norm());
        }
        const double order = std::log2(errs[0] / errs[1]);
        if (order < 3.5) { ok = false; detail += "rk4 order " + format_double(order) + "; "; }
    }

    // Lyapunov residual <= 1e-10 on random Hurwitz matrices
    {
        std::mt19937_64 rng(29);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int trial = 0; trial < 10; ++trial) {
            Matrix m(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) m(i, j) = u(rng);
            const Matrix a_cl =
                m - (linalg::induced_norm(m) + 0.5) * Matrix::Identity(4, 4);
            const Matrix q = Matrix::Identity(4, 4);
            const Matrix p = linalg::solve_lyapunov(a_cl, q);
            if ((p * a_cl + a_cl.transpose() * p + q).norm() > 1e-10 * (p.norm() + q.norm()))
                { ok = false; detail += "lyapunov residual; "; break; }
        }
    }

    // pole placement eigenvalue error <= 1e-6
    {
        const Plant p = oscillator_preset();
        const Vector k =
            linalg::place_poles_continuous(p.linear().a, p.linear().c, {-1.0, -3.0});
        auto eigs = linalg::eigenvalues(p.linear().a + k * p.linear().c.transpose());
        double err = 1e9;
        for (const auto& e1 : eigs)
            for (const auto& e2 : eigs)
                if (std::abs(e1 - linalg::Complex(-1.0)) < 1e-6 &&
                    std::abs(e2 - linalg::Complex(-3.0)) < 1e-6)
                    err = 0.0;
        if (err > 1e-6) { ok = false; detail += "pole placement; "; }
    }

    // determinism: byte-identical reruns of a randomized preset
    {
        Scenario s = preset("fig4");
        s.schedule.d = DUniform{std::log(2.0), 123};
        s.noise = NoiseUniform{0.01, 456};
        s.t_end = 10.0;
        const RunResult a = run_scenario(s);
        const RunResult b = run_scenario(s);
        if (trajectory_csv(a.trajectory) != trajectory_csv(b.trajectory) ||
            jumps_csv(a.trajectory) != jumps_csv(b.trajectory))
            { ok = false; detail += "determinism; "; }
    }

    // certified => converged over all presets and a 20-point r sweep
    {
        for (const std::string& name : preset_names()) {
            const RunResult res = run_scenario(preset(name));
            if (res.certified && !res.converged)
                { ok = false; detail += name + " certified but not converged; "; }
        }
        std::vector<double> rs;
        for (int i = 1; i <= 20; ++i) rs.push_back(0.6 * i / 20.0);
        const auto rows = run_sweep(preset("fig4"), rs);
        for (const auto& row : rows)
            if (row.certified && !row.converged)
                { ok = false; detail += "sweep r = " + format_double(row.r) + "; "; }
    }

    report(10, "property suites (RK4 order, residuals, placement, determinism, soundness)",
           ok, detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all criteria passed\n");
    return failures ? 1 : 0;
}
