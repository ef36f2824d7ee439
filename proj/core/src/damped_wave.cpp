#include <Eigen/Core>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relaxlab/errors.hpp"
#include "relaxlab/fft.hpp"
#include "relaxlab/solver.hpp"
#include "record.hpp"

namespace relaxlab {

namespace {

struct ModeCoeffs {
    cplx e00, e01, e10, e11;  // exp(dt A)
    cplx p1u, p1v;            // phi_1(dt A) e_2
    cplx p2u, p2v;            // phi_2(dt A) e_2
};

// A = [[0, 1], [-(xi^2 + i a xi), -1]]; exponential of the augmented matrix
// [[dt A, e_2, 0], [0, 0, 1], [0, 0, 0]] yields exp(dt A), phi_1 e_2, phi_2 e_2.
ModeCoeffs mode_coeffs(double xi, double a, double dt) {
    using M4 = Eigen::Matrix<cplx, 4, 4>;
    M4 W = M4::Zero();
    W(0, 1) = dt;
    W(1, 0) = -cplx(xi * xi, a * xi) * dt;
    W(1, 1) = -dt;
    W(1, 2) = 1.0;
    W(2, 3) = 1.0;
    const M4 E = W.exp();
    return {E(0, 0), E(0, 1), E(1, 0), E(1, 1), E(0, 2), E(1, 2), E(0, 3), E(1, 3)};
}

void check_data(const InitialData& data, const GridSpec& grid) {
    if (static_cast<int>(data.u0.size()) != grid.space.N ||
        static_cast<int>(data.u1.size()) != grid.space.N)
        throw ConsistencyError("initial data size != grid size");
    for (double v : data.u0)
        if (!std::isfinite(v)) throw DataError("non-finite initial data");
    for (double v : data.u1)
        if (!std::isfinite(v)) throw DataError("non-finite initial data");
}

}  // namespace

// Shared by both integrators: records a snapshot with its diagnostics and
// applies the boundary-contamination monitor.
void record_snapshot(Trajectory& traj, double t, std::vector<double> u, std::vector<double> ut,
                     const SolverOptions& opts) {
    const double dx = traj.grid.space.dx();
    double peak = 0.0, integral = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (!std::isfinite(u[j]) || !std::isfinite(ut[j]))
            throw DivergenceError("non-finite field", traj.snapshots.empty() ? 0.0 : traj.snapshots.back().t);
        peak = std::max(peak, std::abs(u[j]));
        integral += (u[j] + ut[j]) * dx;
    }
    const double edge = std::max(std::abs(u.front()), std::abs(u.back()));
    const double ratio = peak > 0.0 ? edge / peak : 0.0;
    traj.max_boundary_ratio = std::max(traj.max_boundary_ratio, ratio);
    if (ratio > opts.boundary_error) {
        std::ostringstream os;
        os << "boundary contamination " << ratio << " of peak at t=" << t;
        throw TruncationError(os.str());
    }
    if (ratio > opts.boundary_warn) {
        std::ostringstream os;
        os << "boundary value " << ratio << " of peak at t=" << t;
        traj.warnings.push_back(os.str());
    }
    traj.diagnostics.push_back({t, peak, integral, ratio});
    traj.snapshots.push_back({t, std::move(u), std::move(ut)});
}

Trajectory run_damped_wave(const ModelParams& params, const InitialData& data,
                           const GridSpec& grid, const SolverOptions& opts) {
    check_data(data, grid);
    const SpectralGrid& sg = grid.space;
    const int N = sg.N;
    const int H = sg.half_size();
    const double dt = grid.dt;

    std::vector<ModeCoeffs> mc(H);
    std::vector<double> keep(H, 1.0);
    std::vector<double> xi(H);
    for (int k = 0; k < H; ++k) {
        xi[k] = sg.xi_half(k);
        mc[k] = mode_coeffs(xi[k], params.a, dt);
        if (opts.dealias && 3 * k > N) keep[k] = 0.0;
    }
    keep[H - 1] = 0.0;  // the Nyquist mode cannot carry an odd derivative

    Trajectory traj;
    traj.grid = grid;
    traj.params = params;
    traj.data = data;

    Fft fft(N);
    std::vector<cplx> U(H), V(H), aU(H), aV(H), N0(H), N1(H), gh(H);
    std::vector<double> u(N), g(N);
    fft.forward(data.u0, U);
    fft.forward(data.u1, V);

    auto nonlinear = [&](const std::vector<cplx>& Uh, std::vector<cplx>& out) {
        fft.inverse(Uh, u);
        for (int j = 0; j < N; ++j) g[j] = params.g(u[j]);
        fft.forward(g, gh);
        for (int k = 0; k < H; ++k) out[k] = cplx(0.0, -xi[k]) * gh[k] * keep[k];
    };

    std::size_t next = 0;
    if (!grid.snapshot_times.empty() && grid.step_of(grid.snapshot_times[0]) == 0) {
        record_snapshot(traj, 0.0, data.u0, data.u1, opts);
        ++next;
    }
    const long steps = grid.steps();
    double last_good = 0.0;
    for (long n = 1; n <= steps; ++n) {
        if (opts.nonlinear) {
            nonlinear(U, N0);
            for (int k = 0; k < H; ++k) {
                const ModeCoeffs& c = mc[k];
                aU[k] = c.e00 * U[k] + c.e01 * V[k] + dt * c.p1u * N0[k];
                aV[k] = c.e10 * U[k] + c.e11 * V[k] + dt * c.p1v * N0[k];
            }
            nonlinear(aU, N1);
            for (int k = 0; k < H; ++k) {
                const cplx dN = N1[k] - N0[k];
                U[k] = aU[k] + dt * mc[k].p2u * dN;
                V[k] = aV[k] + dt * mc[k].p2v * dN;
            }
        } else {
            for (int k = 0; k < H; ++k) {
                const ModeCoeffs& c = mc[k];
                const cplx u0 = U[k];
                U[k] = c.e00 * u0 + c.e01 * V[k];
                V[k] = c.e10 * u0 + c.e11 * V[k];
            }
        }
        const double t = n * dt;
        if (opts.check_every > 0 && n % opts.check_every == 0) {
            double s = 0.0;
            for (int k = 0; k < H; ++k) s += std::abs(U[k]) + std::abs(V[k]);
            if (!std::isfinite(s)) throw DivergenceError("solution blew up", last_good);
            last_good = t;
        }
        while (next < grid.snapshot_times.size() && grid.step_of(grid.snapshot_times[next]) == n) {
            std::vector<double> su(N), sut(N);
            fft.inverse(U, su);
            fft.inverse(V, sut);
            try {
                record_snapshot(traj, grid.snapshot_times[next], std::move(su), std::move(sut), opts);
            } catch (const DivergenceError&) {
                throw DivergenceError("solution blew up", last_good);
            }
            last_good = t;
            ++next;
        }
    }
    return traj;
}

}  // namespace relaxlab
