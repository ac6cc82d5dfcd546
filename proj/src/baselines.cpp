#include "sdobs/baselines.hpp"

#include <cmath>
#include <map>

namespace sdobs {

HybridTrajectory simulate_continuous(const Plant& plant, const ContinuousObserver& observer,
                                     const std::function<double(double)>& v_continuous,
                                     const Vector& x0, const Vector& z0, double step,
                                     double t_end, int output_stride) {
    const int n = plant.n;
    const int k_dim = observer.k_dim;
    if (x0.size() != n || z0.size() != k_dim)
        throw DimensionMismatch("simulate_continuous: initial condition dimension mismatch");

    RateFn rate = [&](double t, const Vector& s) {
        Vector ds(n + k_dim);
        ds.head(n) = plant.f(s.head(n));
        const double y = plant.h(s.head(n)) + v_continuous(t);
        ds.segment(n, k_dim) = observer.F(s.segment(n, k_dim), y);
        return ds;
    };

    Vector state(n + k_dim);
    state.head(n) = x0;
    state.segment(n, k_dim) = z0;

    HybridTrajectory traj;
    auto record = [&](double t, const Vector& s) {
        traj.times.push_back(t);
        traj.x.push_back(s.head(n));
        traj.z.push_back(s.segment(n, k_dim));
        traj.w.push_back(plant.h(s.head(n)) + v_continuous(t));  // measurement fed
        traj.error.push_back(observer.psi(s.segment(n, k_dim)) - s.head(n));
        traj.is_jump.push_back(false);
    };

    std::vector<StateSample> series;
    try {
        series = integrate_segment(rate, state, 0.0, t_end, step);
    } catch (const NonFiniteState&) {
        traj.diverged = true;
        return traj;
    }
    for (std::size_t j = 0; j < series.size(); ++j)
        if (j % output_stride == 0 || j + 1 == series.size())
            record(series[j].t, series[j].state);
    return traj;
}

HybridTrajectory simulate_zoh(const Plant& plant, const ContinuousObserver& observer,
                              const SamplingSchedule& schedule, const NoiseSignal& v,
                              const Vector& x0, const Vector& z0, double step, double t_end,
                              const SimulationOptions& options) {
    SimulationOptions zoh = options;
    zoh.zero_predictor = true;
    const double w0 = plant.h(x0) + v.at(0);
    return simulate_sampled_data(plant, observer, schedule, v, x0, z0, w0, step, t_end, zoh);
}

DiscreteObserverDesign design_discrete_observer(const Matrix& a, const Vector& c, double T,
                                                const std::vector<linalg::Complex>& targets) {
    if (!(T > 0.0)) throw Error("design_discrete_observer: T must be positive");
    DiscreteObserverDesign d;
    d.assumed_period = T;
    d.ad = linalg::expm(a, T);
    d.gain = linalg::place_poles_discrete(d.ad, c, targets);
    d.targets = targets;
    return d;
}

SampledErrorSeries simulate_discrete_observer(const Plant& plant,
                                              const DiscreteObserverDesign& design,
                                              const SamplingSchedule& actual_schedule,
                                              const Vector& x0, const Vector& z0) {
    if (!plant.is_linear())
        throw WrongPlantKind("simulate_discrete_observer: plant must be linear");
    const Matrix& a = plant.linear().a;
    const Vector& c = plant.linear().c;

    std::map<double, Matrix> flow_cache;  // exact flow per distinct gap
    auto flow = [&](double gap) -> const Matrix& {
        auto it = flow_cache.find(gap);
        if (it == flow_cache.end())
            it = flow_cache.emplace(gap, linalg::expm(a, gap)).first;
        return it->second;
    };

    SampledErrorSeries series;
    Vector x = x0;
    Vector z = z0;
    for (std::size_t k = 0; k < actual_schedule.instants.size(); ++k) {
        series.indices.push_back(k);
        series.instants.push_back(actual_schedule.instants[k]);
        series.errors.push_back(z - x);
        if (!z.allFinite() || !x.allFinite())
            throw NonFiniteState("simulate_discrete_observer: non-finite state");
        if (k + 1 == actual_schedule.instants.size()) break;

        const double y_k = c.dot(x);
        z = (design.ad * z + design.gain * (c.dot(z) - y_k)).eval();
        x = (flow(actual_schedule.instants[k + 1] - actual_schedule.instants[k]) * x).eval();
    }
    return series;
}

}  // namespace sdobs
