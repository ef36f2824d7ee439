#pragma once

#include <vector>

#include "relaxlab/solver.hpp"

namespace relaxlab {

void record_snapshot(Trajectory& traj, double t, std::vector<double> u, std::vector<double> ut,
                     const SolverOptions& opts);

}  // namespace relaxlab
