#include "sdobs/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sdobs {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trajectory_csv(const HybridTrajectory& traj) {
    std::ostringstream out;
    const int n = traj.x.empty() ? 0 : static_cast<int>(traj.x.front().size());
    const int k = traj.z.empty() ? 0 : static_cast<int>(traj.z.front().size());
    out << "t";
    for (int i = 1; i <= n; ++i) out << ",x" << i;
    for (int i = 1; i <= k; ++i) out << ",z" << i;
    out << ",w";
    for (int i = 1; i <= n; ++i) out << ",e" << i;
    out << ",is_jump\n";
    for (std::size_t row = 0; row < traj.size(); ++row) {
        out << format_double(traj.times[row]);
        for (int i = 0; i < n; ++i) out << ',' << format_double(traj.x[row](i));
        for (int i = 0; i < k; ++i) out << ',' << format_double(traj.z[row](i));
        out << ',' << format_double(traj.w[row]);
        for (int i = 0; i < n; ++i) out << ',' << format_double(traj.error[row](i));
        out << ',' << (traj.is_jump[row] ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string jumps_csv(const HybridTrajectory& traj) {
    std::ostringstream out;
    out << "i,tau_i,gap,d_i,y,v,w_before,w_after\n";
    for (const JumpRecord& j : traj.jumps) {
        out << j.index << ',' << format_double(j.tau) << ',' << format_double(j.gap) << ','
            << format_double(j.d) << ',' << format_double(j.y) << ',' << format_double(j.v)
            << ',' << format_double(j.w_before) << ',' << format_double(j.w_after) << '\n';
    }
    return out.str();
}

std::string error_series_csv(const SampledErrorSeries& series) {
    std::ostringstream out;
    const int n = series.errors.empty() ? 0 : static_cast<int>(series.errors.front().size());
    out << "k,tau_k";
    for (int i = 1; i <= n; ++i) out << ",e" << i;
    out << '\n';
    for (std::size_t row = 0; row < series.indices.size(); ++row) {
        out << series.indices[row] << ',' << format_double(series.instants[row]);
        for (int i = 0; i < n; ++i) out << ',' << format_double(series.errors[row](i));
        out << '\n';
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << content;
}

}  // namespace sdobs
