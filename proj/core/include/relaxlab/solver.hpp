#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "relaxlab/grid.hpp"
#include "relaxlab/model.hpp"
#include "relaxlab/params.hpp"
#include "relaxlab/profiles.hpp"

namespace relaxlab {

struct GridSpec {
    SpectralGrid space;
    double dt = 0.05;
    double T = 2000.0;
    std::vector<double> snapshot_times;  // sorted, multiples of dt, within [0, T]

    // L = max(40 sqrt(1+T), 20/(gamma-1)).
    static double default_half_width(double T, double gamma);
    // Geometric times 2^{k/per_octave} for t >= 1 rounded to multiples of dt,
    // always including 0 and T.
    static std::vector<double> geometric_times(double T, double dt, int per_octave = 4);
    static GridSpec make(double L, int N, double dt, double T, std::vector<double> times);
    static GridSpec make_default(double T, double gamma, int N, double dt, int per_octave = 4);

    long steps() const;
    long step_of(double t) const;
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> ut;
};

struct StepRecord {
    double t = 0.0;
    double linf = 0.0;
    double integral = 0.0;   // trapezoid int (u + u_t) dx
    double boundary = 0.0;   // |u(-L)| / max |u|
};

struct Trajectory {
    GridSpec grid;
    ModelParams params;
    InitialData data;
    std::vector<Snapshot> snapshots;
    std::vector<StepRecord> diagnostics;
    std::vector<std::string> warnings;
    double max_boundary_ratio = 0.0;
};

struct SolverOptions {
    bool nonlinear = true;
    bool dealias = true;
    double boundary_warn = 1e-6;
    double boundary_error = 1e-3;
    // Finite-ness is checked every this many steps besides every snapshot.
    int check_every = 200;
};

// u_tt - u_xx + u_t + a u_x + (g(u))_x = 0 on the periodic grid. Each mode
// carries (u^, u_t^) through the exact linear propagator; the forcing
// -(i xi) g^ enters the u_t component through a second-order exponential
// Runge-Kutta step (ETD2RK). The nonlinearity is evaluated pseudospectrally with
// the 2/3 rule.
Trajectory run_damped_wave(const ModelParams& params, const InitialData& data,
                           const GridSpec& grid, const SolverOptions& opts = {});

// Relaxation system u_t + v_x = 0, v_t + u_x = f(u) - v with v0 = -int_{-L}^x u1.
// Time stepping composes three Strang steps with Yoshida weights; each Strang
// step uses the exact relaxation flow (u frozen) and exact spectral transport
// along the characteristics u +- v.
Trajectory run_jinxin(const ModelParams& params, const InitialData& data, const GridSpec& grid,
                      const SolverOptions& opts = {});

// z_t + a z_x + (b chi z)_x - mu z_xx = d/dx lambda(x,t), Crank-Nicolson in time,
// centred differences in space, chi frozen at each half step; periodic cyclic
// tridiagonal solves. Snapshot::ut holds the last one-step time difference.
using ForcingFn = std::function<std::vector<double>(double t)>;
Trajectory solve_auxiliary(std::span<const double> z0, const ForcingFn& lambda,
                           const ProfileSet& ps, const GridSpec& grid);

// Profile chi sampled on the grid at the given times, packaged as a trajectory.
Trajectory sample_chi(const ProfileSet& ps, const SpectralGrid& grid,
                      const std::vector<double>& times);

enum class ResidualKind { DampedWave, Burgers };

struct ResidualPoint {
    double t = 0.0;
    double max_residual = 0.0;
};

// Max-norm discrete residual at the middle of every consecutive snapshot triple:
// three-point non-uniform time differences, centred differences in space.
std::vector<ResidualPoint> pde_residual(const Trajectory& traj, ResidualKind which);

}  // namespace relaxlab
