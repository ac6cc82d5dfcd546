#include <cmath>

#include "doctest.h"
#include "sdobs/baselines.hpp"
#include "sdobs/metrics.hpp"

using namespace sdobs;

namespace {

LinearDesign paper_design() {
    Vector k(2);
    k << -4.0, 0.0;
    Matrix p(2, 2);
    p << 2.5, -1.0, -1.0, 0.5;
    return design_linear(oscillator_preset(), k, 1.0, 64.0 / 3.0, p);
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

}  // namespace

TEST_CASE("continuous observer: e2 decays below 1e-4 by t = 10") {
    const LinearDesign d = paper_design();
    const auto traj = simulate_continuous(
        oscillator_preset(), d.observer, [](double) { return 0.0; }, paper_x0(), paper_z0(),
        1e-3, 12.0);
    bool past_ten_ok = true;
    for (std::size_t i = 0; i < traj.size(); ++i)
        if (traj.times[i] >= 10.0 && std::abs(traj.error[i](1)) >= 1e-4)
            past_ten_ok = false;
    CHECK(past_ten_ok);
}

TEST_CASE("continuous observer: exact init stays at integrator-noise level") {
    const LinearDesign d = paper_design();
    const auto traj = simulate_continuous(
        oscillator_preset(), d.observer, [](double) { return 0.0; }, paper_x0(), paper_x0(),
        1e-3, 10.0);
    for (const auto& e : traj.error) CHECK(e.norm() < 1e-10);
}

TEST_CASE("continuous observer: constant noise stays inside the Lyapunov gain bound") {
    const LinearDesign d = paper_design();
    const double vbar = 0.1;
    const auto traj = simulate_continuous(
        oscillator_preset(), d.observer, [vbar](double) { return vbar; }, paper_x0(),
        paper_z0(), 1e-3, 40.0);
    const double bound = std::sqrt(d.gamma / (2.0 * d.mu * d.k1)) * vbar * 1.1;
    for (std::size_t i = 0; i < traj.size(); ++i)
        if (traj.times[i] >= 30.0) CHECK(traj.error[i].norm() <= bound);
}

TEST_CASE("continuous observer: V(e) decays at rate 2 mu between samples") {
    const LinearDesign d = paper_design();
    const auto traj = simulate_continuous(
        oscillator_preset(), d.observer, [](double) { return 0.0; }, paper_x0(), paper_z0(),
        1e-3, 5.0);
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        const double v0 = traj.error[i].dot(d.lyap_p * traj.error[i]);
        const double v1 = traj.error[i + 1].dot(d.lyap_p * traj.error[i + 1]);
        const double dt = traj.times[i + 1] - traj.times[i];
        CHECK(v1 <= v0 * std::exp(-2.0 * d.mu * (1.0 - 1e-3) * dt) + 1e-14);
    }
}

TEST_CASE("ZOH: persistent oscillation near amplitude 0.15 at r = 0.081") {
    const LinearDesign d = paper_design();
    const auto schedule = uniform_schedule(0.081, 60.0);
    const auto traj = simulate_zoh(oscillator_preset(), d.observer, schedule, NoiseSignal{},
                                   paper_x0(), paper_z0(), 1e-3, 60.0);
    const Metrics m = compute_metrics(traj, 0.25, 1e-3);
    CHECK(m.tail_amplitude[1] >= 0.10);
    CHECK(m.tail_amplitude[1] <= 0.20);
}

TEST_CASE("ZOH: error vanishes as r -> 0") {
    const LinearDesign d = paper_design();
    const auto schedule = uniform_schedule(1e-3, 30.0);
    const auto traj = simulate_zoh(oscillator_preset(), d.observer, schedule, NoiseSignal{},
                                   paper_x0(), paper_z0(), 5e-4, 30.0);
    const Metrics m = compute_metrics(traj, 0.25, 1e-3);
    CHECK(m.tail_amplitude[1] < 5e-3);
}

TEST_CASE("ZOH: r = 0.45 is at least 5x worse than r = 0.081") {
    const LinearDesign d = paper_design();
    const auto small = simulate_zoh(oscillator_preset(), d.observer,
                                    uniform_schedule(0.081, 60.0), NoiseSignal{}, paper_x0(),
                                    paper_z0(), 1e-3, 60.0);
    const auto large = simulate_zoh(oscillator_preset(), d.observer,
                                    uniform_schedule(0.45, 60.0), NoiseSignal{}, paper_x0(),
                                    paper_z0(), 1e-3, 60.0);
    const double amp_small = compute_metrics(small, 0.25, 1e-3).tail_amplitude[1];
    const double amp_large = compute_metrics(large, 0.25, 1e-3).tail_amplitude[1];
    CHECK(amp_large >= 5.0 * amp_small);
}

TEST_CASE("ZOH equals the sampled-data simulator with a zeroed predictor") {
    const LinearDesign d = paper_design();
    const auto schedule = uniform_schedule(0.081, 5.0);
    NoiseSignal noise{NoiseUniform{0.05, 11}};
    const auto zoh = simulate_zoh(oscillator_preset(), d.observer, schedule, noise,
                                  paper_x0(), paper_z0(), 1e-3, 5.0);
    SimulationOptions options;
    options.zero_predictor = true;
    const double w0 = 0.0 + noise.at(0);  // h(x0) + v(0)
    const auto degenerate =
        simulate_sampled_data(oscillator_preset(), d.observer, schedule, noise, paper_x0(),
                              paper_z0(), w0, 1e-3, 5.0, options);
    REQUIRE(zoh.size() == degenerate.size());
    for (std::size_t i = 0; i < zoh.size(); ++i) {
        CHECK((zoh.z[i] - degenerate.z[i]).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(std::abs(zoh.w[i] - degenerate.w[i]) <= 1e-12);
    }
}

TEST_CASE("discrete design reproduces the paper gains and rejects T = pi/2") {
    const Plant p = oscillator_preset();
    const auto d = design_discrete_observer(p.linear().a, p.linear().c, 0.075, {0.8, 0.8});
    CHECK(std::abs(d.gain(0) - (-0.37754)) < 1e-4);
    CHECK(std::abs(d.gain(1) - (-0.17804)) < 1e-4);
    CHECK(linalg::is_schur(d.ad + d.gain * p.linear().c.transpose(), 1e-6));

    CHECK_THROWS_AS(
        design_discrete_observer(p.linear().a, p.linear().c, M_PI / 2.0, {0.8, 0.8}),
        NotObservable);
}

TEST_CASE("deadbeat discrete placement puts both eigenvalues at zero") {
    const Plant p = oscillator_preset();
    const auto d = design_discrete_observer(p.linear().a, p.linear().c, 0.075, {0.0, 0.0});
    const auto eigs = linalg::eigenvalues(d.ad + d.gain * p.linear().c.transpose());
    for (const auto& ev : eigs) CHECK(std::abs(ev) < 1e-6);
}

TEST_CASE("discrete observer with schedule mismatch keeps a large residual oscillation") {
    const Plant p = oscillator_preset();
    const auto d = design_discrete_observer(p.linear().a, p.linear().c, 0.075, {0.8, 0.8});
    const auto schedule = uniform_schedule(0.081, 60.0);
    const auto series = simulate_discrete_observer(p, d, schedule, paper_x0(), paper_z0());
    const Metrics m = compute_metrics(series, 0.25, 1e-3);
    CHECK(m.tail_amplitude[1] > 0.21);
}

TEST_CASE("discrete observer with matched schedule decays geometrically") {
    const Plant p = oscillator_preset();
    const auto d = design_discrete_observer(p.linear().a, p.linear().c, 0.075, {0.8, 0.8});
    const auto schedule = uniform_schedule(0.075, 60.0);
    const auto series = simulate_discrete_observer(p, d, schedule, paper_x0(), paper_z0());
    // fit kappa from the decay envelope at rho = max |target| + 1e-3; stop the
    // fit once rho^k e0 sinks below the rounding floor of the recursion
    const double rho = 0.8 + 1e-3;
    const double e0 = series.errors.front().norm();
    double kappa = 0.0;
    for (std::size_t k = 0; k < series.errors.size(); ++k) {
        const double envelope = e0 * std::pow(rho, double(k));
        if (envelope < 1e-12) break;
        kappa = std::max(kappa, series.errors[k].norm() / envelope);
    }
    CHECK(kappa < 200.0);  // transient overshoot of the non-normal closed loop
    for (std::size_t k = 0; k < series.errors.size(); ++k)
        CHECK(series.errors[k].norm() <= kappa * e0 * std::pow(rho, double(k)) + 1e-12);
    // forcing term vanishes, so the error dies out entirely
    CHECK(series.errors.back().norm() < 1e-12);
}

TEST_CASE("discrete error envelope with fitted constants holds under mismatch") {
    const Plant p = oscillator_preset();
    const Matrix a = p.linear().a;
    const auto d = design_discrete_observer(a, p.linear().c, 0.075, {0.8, 0.8});

    // fit K, c from the homogeneous (matched) decay
    const auto matched = simulate_discrete_observer(p, d, uniform_schedule(0.075, 30.0),
                                                    paper_x0(), paper_z0());
    const double rho = 0.81;
    const double e0 = matched.errors.front().norm();
    double big_k = 1.0;
    for (std::size_t k = 0; k < matched.errors.size(); ++k)
        big_k = std::max(big_k, matched.errors[k].norm() / (e0 * std::pow(rho, double(k))));

    const auto schedule = uniform_schedule(0.081, 30.0);
    const auto series = simulate_discrete_observer(p, d, schedule, paper_x0(), paper_z0());
    const Matrix mismatch_step = linalg::expm(a, 0.075) - linalg::expm(a, 0.081);

    // forcing bound gamma via the geometric series of the homogeneous decay
    const double gamma = big_k / (1.0 - rho);
    double max_forcing = 0.0;
    Vector x = paper_x0();
    for (std::size_t j = 0; j + 1 < series.errors.size(); ++j) {
        max_forcing = std::max(max_forcing, (mismatch_step * x).norm());
        x = (linalg::expm(a, 0.081) * x).eval();
    }
    for (std::size_t k = 0; k < series.errors.size(); ++k) {
        const double envelope =
            big_k * std::pow(rho, double(k)) * e0 + gamma * max_forcing;
        CHECK(series.errors[k].norm() <= envelope);
    }
}
