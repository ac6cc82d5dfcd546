#include "sdobs/simulate.hpp"

#include <cmath>

namespace sdobs {

Vector rk4_step(const RateFn& rate, double t, const Vector& state, double h) {
    const Vector k1 = rate(t, state);
    const Vector k2 = rate(t + 0.5 * h, state + 0.5 * h * k1);
    const Vector k3 = rate(t + 0.5 * h, state + 0.5 * h * k2);
    const Vector k4 = rate(t + h, state + h * k3);
    return state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::vector<StateSample> integrate_segment(const RateFn& rate, const Vector& state0,
                                           double t0, double t1, double step) {
    if (!(t1 > t0)) throw Error("integrate_segment: t1 must exceed t0");
    if (!(step > 0.0)) throw Error("integrate_segment: step must be positive");

    std::vector<StateSample> out;
    out.push_back({t0, state0});
    double t = t0;
    Vector state = state0;
    while (t < t1 - 1e-15 * std::max(1.0, std::abs(t1))) {
        const double h = std::min(step, t1 - t);
        state = rk4_step(rate, t, state, h);
        t = (t1 - t <= step) ? t1 : t + h;
        if (!state.allFinite() || state.cwiseAbs().maxCoeff() > kDivergenceCutoff)
            throw NonFiniteState("integrate_segment: state diverged at t = " + std::to_string(t));
        out.push_back({t, state});
    }
    return out;
}

HybridTrajectory simulate_sampled_data(const Plant& plant, const ContinuousObserver& observer,
                                       const SamplingSchedule& schedule, const NoiseSignal& v,
                                       const Vector& x0, const Vector& z0, double w0,
                                       double step, double t_end,
                                       const SimulationOptions& options) {
    const int n = plant.n;
    const int k_dim = observer.k_dim;
    if (x0.size() != n || z0.size() != k_dim)
        throw DimensionMismatch("simulate_sampled_data: initial condition dimension mismatch");
    if (!(step > 0.0)) throw Error("simulate_sampled_data: step must be positive");
    if (step > schedule.min_gap() * (1.0 + 1e-12))
        throw StepTooLarge("simulate_sampled_data: step exceeds the minimum inter-sample gap");
    if (schedule.instants.empty() || schedule.instants.back() < t_end)
        throw Error("simulate_sampled_data: schedule does not cover the horizon");

    RateFn rate = [&](double, const Vector& s) {
        Vector ds(n + k_dim + 1);
        ds.head(n) = plant.f(s.head(n));
        ds.segment(n, k_dim) = observer.F(s.segment(n, k_dim), s(n + k_dim));
        ds(n + k_dim) =
            options.zero_predictor ? 0.0 : observer.predictor_rate(s.segment(n, k_dim));
        return ds;
    };

    HybridTrajectory traj;
    auto record = [&](double t, const Vector& s, bool jump) {
        traj.times.push_back(t);
        traj.x.push_back(s.head(n));
        traj.z.push_back(s.segment(n, k_dim));
        traj.w.push_back(s(n + k_dim));
        traj.error.push_back(observer.psi(s.segment(n, k_dim)) - s.head(n));
        traj.is_jump.push_back(jump);
    };

    Vector state(n + k_dim + 1);
    state.head(n) = x0;
    state.segment(n, k_dim) = z0;
    state(n + k_dim) = w0;
    record(0.0, state, false);

    // y(tau_0), v(tau_0) for the opt-in stale-reset mode
    double prev_y = plant.h(x0);
    double prev_v = v.at(0);

    long substep_counter = 0;
    for (std::size_t i = 0; i + 1 < schedule.instants.size(); ++i) {
        const double tau_i = schedule.instants[i];
        const double tau_next = std::min(schedule.instants[i + 1], t_end);
        if (!(tau_next > tau_i)) break;

        std::vector<StateSample> segment;
        try {
            segment = integrate_segment(rate, state, tau_i, tau_next, step);
        } catch (const NonFiniteState&) {
            traj.diverged = true;
            return traj;
        }
        for (std::size_t j = 1; j + 1 < segment.size(); ++j) {
            ++substep_counter;
            if (substep_counter % options.output_stride == 0)
                record(segment[j].t, segment[j].state, false);
        }
        ++substep_counter;
        state = segment.back().state;

        if (schedule.instants[i + 1] > t_end) {
            record(t_end, state, false);
            break;
        }

        // jump: reset the predictor to the noisy measurement
        const double y = plant.h(state.head(n));
        const double v_sample = v.at(i + 1);
        const double w_before = state(n + k_dim);
        const double w_after = options.stale_reset ? prev_y + prev_v : y + v_sample;
        state(n + k_dim) = w_after;
        prev_y = y;
        prev_v = v_sample;
        traj.jumps.push_back({i + 1, tau_next, tau_next - tau_i,
                              i < schedule.perturbation_log.size()
                                  ? schedule.perturbation_log[i]
                                  : 0.0,
                              y, v_sample, w_before, w_after});
        record(tau_next, state, true);
        if (tau_next >= t_end) break;
    }
    return traj;
}

}  // namespace sdobs
