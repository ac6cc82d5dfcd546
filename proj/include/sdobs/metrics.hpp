#pragma once

#include <optional>

#include "sdobs/baselines.hpp"

namespace sdobs {

struct Metrics {
    std::vector<double> tail_amplitude;          // (max - min)/2 per error component
    std::optional<double> convergence_time;      // first t after which |e| stays below tol
    double sup_error = 0.0;                      // sup_t |e(t)| over the full horizon
};

/// Tail window is the final `window_fraction` of the time span.
Metrics compute_metrics(const std::vector<double>& times, const std::vector<Vector>& errors,
                        double window_fraction, double tolerance);

Metrics compute_metrics(const HybridTrajectory& traj, double window_fraction,
                        double tolerance);
Metrics compute_metrics(const SampledErrorSeries& series, double window_fraction,
                        double tolerance);

}  // namespace sdobs
