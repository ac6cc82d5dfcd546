#pragma once

#include "sdobs/integrate.hpp"
#include "sdobs/observer_design.hpp"
#include "sdobs/plant.hpp"
#include "sdobs/schedule.hpp"

namespace sdobs {

struct JumpRecord {
    std::size_t index;   // i of tau_i
    double tau;
    double gap;          // tau_i - tau_{i-1}
    double d;            // perturbation used for this interval
    double y;            // h(x(tau_i))
    double v;            // noise sample
    double w_before;
    double w_after;
};

struct HybridTrajectory {
    std::vector<double> times;
    std::vector<Vector> x;
    std::vector<Vector> z;
    std::vector<double> w;
    std::vector<Vector> error;  // Psi(z) - x
    std::vector<bool> is_jump;
    std::vector<JumpRecord> jumps;
    bool diverged = false;

    std::size_t size() const { return times.size(); }
};

struct SimulationOptions {
    int output_stride = 1;
    // Reset w to the previous sample y(tau_i) instead of the fresh y(tau_{i+1}).
    bool stale_reset = false;
    // Hold the last measurement instead of integrating the predictor (ZOH).
    bool zero_predictor = false;
};

/// Flow dx/dt = f(x), dz/dt = F(z, w), dw/dt = L_f h(Psi(z)) on each
/// inter-sample interval, then reset w to the fresh noisy measurement.
/// On divergence (|state| > 1e12) the partial trajectory is returned with
/// `diverged` set.
HybridTrajectory simulate_sampled_data(const Plant& plant, const ContinuousObserver& observer,
                                       const SamplingSchedule& schedule, const NoiseSignal& v,
                                       const Vector& x0, const Vector& z0, double w0,
                                       double step, double t_end,
                                       const SimulationOptions& options = {});

}  // namespace sdobs
