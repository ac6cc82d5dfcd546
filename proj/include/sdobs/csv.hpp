#pragma once

#include <string>

#include "sdobs/baselines.hpp"

namespace sdobs {

/// `t,x1..xn,z1..zk,w,e1..en,is_jump` rows; doubles printed with %.17g so
/// reruns are byte-identical.
std::string trajectory_csv(const HybridTrajectory& traj);

/// Sidecar `i,tau_i,gap,d_i,y,v,w_before,w_after`.
std::string jumps_csv(const HybridTrajectory& traj);

/// `k,tau_k,e1..en`.
std::string error_series_csv(const SampledErrorSeries& series);

std::string format_double(double v);

void write_file(const std::string& path, const std::string& content);

}  // namespace sdobs
