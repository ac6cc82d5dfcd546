#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "sdobs/errors.hpp"

namespace sdobs {

/// Schedule perturbation d(tau_i): each gap is r*exp(-d_i).
struct DZero {};
struct DConstant {
    double value = 0.0;
};
struct DUniform {
    double max = 0.0;
    std::uint64_t seed = 0;
};
using DSource = std::variant<DZero, DConstant, DUniform>;

/// Realized sampling instants tau_0 = 0 < tau_1 < ... with gaps r*exp(-d_i).
struct SamplingSchedule {
    std::vector<double> instants;
    double upper_diameter = 0.0;
    std::vector<double> perturbation_log;  // d_i per generated interval

    double min_gap() const;
};

SamplingSchedule generate_schedule(double r, const DSource& d_source, double t_end);

/// Uniform schedule with an assumed period (used by the discrete baseline).
SamplingSchedule uniform_schedule(double r, double t_end);

/// Measurement noise, evaluated only at sampling instants.
struct NoiseZero {};
struct NoiseConstant {
    double level = 0.0;
};
struct NoiseUniform {
    double bound = 0.0;
    std::uint64_t seed = 0;
};
struct NoiseCustom {
    std::vector<double> samples;  // indexed by sample number, last value held
};
using NoiseKind = std::variant<NoiseZero, NoiseConstant, NoiseUniform, NoiseCustom>;

struct NoiseSignal {
    NoiseKind kind = NoiseZero{};

    /// v at the i-th sampling instant; deterministic given the seed.
    double at(std::size_t sample_index) const;
};

}  // namespace sdobs
