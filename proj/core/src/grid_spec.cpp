#include <algorithm>
#include <cmath>

#include "relaxlab/errors.hpp"
#include "relaxlab/solver.hpp"

namespace relaxlab {

double GridSpec::default_half_width(double T, double gamma) {
    if (!(gamma > 1.0)) throw DomainError("gamma must exceed 1");
    return std::max(40.0 * std::sqrt(1.0 + T), 20.0 / (gamma - 1.0));
}

std::vector<double> GridSpec::geometric_times(double T, double dt, int per_octave) {
    if (!(dt > 0.0) || !(T > 0.0)) throw DomainError("time step and horizon must be positive");
    if (per_octave < 1) throw DomainError("snapshots per octave must be >= 1");
    std::vector<double> times{0.0};
    for (int k = 0;; ++k) {
        const double t = std::pow(2.0, static_cast<double>(k) / per_octave);
        if (t >= T) break;
        const double snapped = std::round(t / dt) * dt;
        if (snapped > times.back() + 0.5 * dt) times.push_back(snapped);
    }
    if (T > times.back() + 0.5 * dt) times.push_back(T);
    return times;
}

GridSpec GridSpec::make(double L, int N, double dt, double T, std::vector<double> times) {
    GridSpec g;
    g.space = SpectralGrid::make(L, N);
    if (!(dt > 0.0) || !(T > 0.0)) throw DomainError("time step and horizon must be positive");
    const double steps = std::round(T / dt);
    if (std::abs(steps * dt - T) > 1e-9 * T) throw DomainError("T must be a multiple of dt");
    g.dt = dt;
    g.T = T;
    std::sort(times.begin(), times.end());
    for (double& t : times) {
        if (t < 0.0 || t > T * (1.0 + 1e-12)) throw DomainError("snapshot time outside [0, T]");
        t = std::round(t / dt) * dt;
    }
    times.erase(std::unique(times.begin(), times.end(),
                            [&](double x, double y) { return std::abs(x - y) < 0.5 * dt; }),
                times.end());
    g.snapshot_times = std::move(times);
    return g;
}

GridSpec GridSpec::make_default(double T, double gamma, int N, double dt, int per_octave) {
    return make(default_half_width(T, gamma), N, dt, T, geometric_times(T, dt, per_octave));
}

long GridSpec::steps() const { return std::lround(T / dt); }
long GridSpec::step_of(double t) const { return std::lround(t / dt); }

}  // namespace relaxlab
