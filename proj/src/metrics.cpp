#include "sdobs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sdobs {

Metrics compute_metrics(const std::vector<double>& times, const std::vector<Vector>& errors,
                        double window_fraction, double tolerance) {
    if (times.empty() || errors.empty() || times.size() != errors.size())
        throw EmptySeries("compute_metrics: empty or inconsistent series");
    if (!(window_fraction > 0.0 && window_fraction < 1.0))
        throw Error("compute_metrics: window fraction must be in (0, 1)");

    const int dim = static_cast<int>(errors.front().size());
    const double t0 = times.front();
    const double t1 = times.back();
    const double window_start = t1 - window_fraction * (t1 - t0);

    Metrics m;
    m.tail_amplitude.assign(dim, 0.0);
    Vector lo = Vector::Constant(dim, std::numeric_limits<double>::infinity());
    Vector hi = Vector::Constant(dim, -std::numeric_limits<double>::infinity());

    std::optional<double> candidate;  // start of the current below-tolerance run
    for (std::size_t i = 0; i < times.size(); ++i) {
        m.sup_error = std::max(m.sup_error, errors[i].norm());
        if (errors[i].norm() <= tolerance) {
            if (!candidate) candidate = times[i];
        } else {
            candidate.reset();
        }
        if (times[i] >= window_start) {
            lo = lo.cwiseMin(errors[i]);
            hi = hi.cwiseMax(errors[i]);
        }
    }
    for (int j = 0; j < dim; ++j) m.tail_amplitude[j] = 0.5 * (hi(j) - lo(j));
    m.convergence_time = candidate;
    return m;
}

Metrics compute_metrics(const HybridTrajectory& traj, double window_fraction,
                        double tolerance) {
    return compute_metrics(traj.times, traj.error, window_fraction, tolerance);
}

Metrics compute_metrics(const SampledErrorSeries& series, double window_fraction,
                        double tolerance) {
    return compute_metrics(series.instants, series.errors, window_fraction, tolerance);
}

}  // namespace sdobs
