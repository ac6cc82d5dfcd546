#pragma once

#include <functional>
#include <vector>

#include "sdobs/errors.hpp"
#include "sdobs/linalg.hpp"

namespace sdobs {

using linalg::Vector;

using RateFn = std::function<Vector(double t, const Vector& state)>;

struct StateSample {
    double t;
    Vector state;
};

inline constexpr double kDivergenceCutoff = 1e12;

/// One classical RK4 step.
Vector rk4_step(const RateFn& rate, double t, const Vector& state, double h);

/// Fixed-step classical RK4 over [t0, t1]; uniform substeps of size `step`,
/// final substep truncated to land exactly on t1. Returns the state at every
/// substep boundary, including t0 and t1.
std::vector<StateSample> integrate_segment(const RateFn& rate, const Vector& state0,
                                           double t0, double t1, double step);

}  // namespace sdobs
