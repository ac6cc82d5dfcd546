#include "sdobs/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sdobs {

double SamplingSchedule::min_gap() const {
    double g = upper_diameter;
    for (std::size_t i = 0; i + 1 < instants.size(); ++i)
        g = std::min(g, instants[i + 1] - instants[i]);
    return g;
}

SamplingSchedule generate_schedule(double r, const DSource& d_source, double t_end) {
    if (!(r > 0.0)) throw InvalidDiameter("generate_schedule: r must be positive");
    if (!(t_end > 0.0)) throw Error("generate_schedule: t_end must be positive");

    std::mt19937_64 rng;
    std::uniform_real_distribution<double> uni;
    if (const auto* u = std::get_if<DUniform>(&d_source)) {
        rng.seed(u->seed);
        uni = std::uniform_real_distribution<double>(0.0, u->max);
    }

    SamplingSchedule s;
    s.upper_diameter = r;
    s.instants.push_back(0.0);
    double tau = 0.0;
    while (tau < t_end) {
        double d = 0.0;
        if (const auto* c = std::get_if<DConstant>(&d_source)) {
            if (c->value < 0.0) throw Error("generate_schedule: d must be non-negative");
            d = c->value;
        } else if (std::holds_alternative<DUniform>(d_source)) {
            d = uni(rng);
        }
        tau += r * std::exp(-d);
        s.instants.push_back(tau);
        s.perturbation_log.push_back(d);
    }
    return s;
}

SamplingSchedule uniform_schedule(double r, double t_end) {
    return generate_schedule(r, DZero{}, t_end);
}

double NoiseSignal::at(std::size_t sample_index) const {
    if (std::holds_alternative<NoiseZero>(kind)) return 0.0;
    if (const auto* c = std::get_if<NoiseConstant>(&kind)) return c->level;
    if (const auto* u = std::get_if<NoiseUniform>(&kind)) {
        // per-index stream keeps the value independent of evaluation order
        std::mt19937_64 rng(u->seed + 0x9e3779b97f4a7c15ULL * (sample_index + 1));
        return std::uniform_real_distribution<double>(-u->bound, u->bound)(rng);
    }
    const auto& samples = std::get<NoiseCustom>(kind).samples;
    if (samples.empty()) return 0.0;
    return samples[std::min(sample_index, samples.size() - 1)];
}

}  // namespace sdobs
