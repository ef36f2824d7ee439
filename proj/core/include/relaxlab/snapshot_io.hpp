#pragma once

#include <iosfwd>
#include <string>

#include "relaxlab/params.hpp"
#include "relaxlab/solver.hpp"

namespace relaxlab {

// Binary layout, all integers and floats little-endian:
//   magic "RLXSNAP\0", u32 version, u32 reserved,
//   f64 L, u64 N, f64 dt, f64 T, f64 a, f64 b, f64 c,
//   f64 alpha, f64 beta, f64 c_plus, f64 c_minus, u64 count,
//   then per snapshot: f64 t, f64 u[N], f64 ut[N].
inline constexpr unsigned kSnapshotFormatVersion = 1;

struct SnapshotFile {
    double L = 0.0;
    int N = 0;
    double dt = 0.0;
    double T = 0.0;
    ModelParams params;
    TailSpec tail;
    std::vector<Snapshot> snapshots;
};

void write_snapshots(std::ostream& os, const Trajectory& traj, const TailSpec& tail);
void write_snapshots(const std::string& path, const Trajectory& traj, const TailSpec& tail);
SnapshotFile read_snapshots(std::istream& is);
SnapshotFile read_snapshots(const std::string& path);

// Long-format CSV with header "t,x,u".
void write_snapshots_csv(std::ostream& os, const Trajectory& traj);

// Shortest round-trip decimal representation, used by every CSV/JSON writer.
std::string format_double(double v);

}  // namespace relaxlab
