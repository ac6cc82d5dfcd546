#pragma once

#include "sdobs/simulate.hpp"

namespace sdobs {

/// Ideal implementation: the observer sees the continuous output y(t) + v(t).
HybridTrajectory simulate_continuous(const Plant& plant, const ContinuousObserver& observer,
                                     const std::function<double(double)>& v_continuous,
                                     const Vector& x0, const Vector& z0, double step,
                                     double t_end, int output_stride = 1);

/// Zero-order hold: the most recent sample y(tau_i) + v(tau_i) is held
/// constant over each inter-sample interval.
HybridTrajectory simulate_zoh(const Plant& plant, const ContinuousObserver& observer,
                              const SamplingSchedule& schedule, const NoiseSignal& v,
                              const Vector& x0, const Vector& z0, double step, double t_end,
                              const SimulationOptions& options = {});

struct DiscreteObserverDesign {
    double assumed_period = 0.0;  // T
    Matrix ad;                    // expm(A, T)
    Vector gain;                  // L
    std::vector<linalg::Complex> targets;
};

struct SampledErrorSeries {
    std::vector<std::size_t> indices;
    std::vector<double> instants;
    std::vector<Vector> errors;  // e_k = z_k - x(tau_k)
};

/// Discrete-time pole placement at an assumed uniform period T.
DiscreteObserverDesign design_discrete_observer(const Matrix& a, const Vector& c, double T,
                                               const std::vector<linalg::Complex>& targets);

/// Runs the discrete observer z_{k+1} = A(T) z_k + L(c'z_k - y_k) against the
/// exact plant flow on the actual (possibly mismatched) schedule. Inter-sample
/// behavior is not represented.
SampledErrorSeries simulate_discrete_observer(const Plant& plant,
                                              const DiscreteObserverDesign& design,
                                              const SamplingSchedule& actual_schedule,
                                              const Vector& x0, const Vector& z0);

}  // namespace sdobs
