#include <cmath>

#include "record.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/fft.hpp"
#include "relaxlab/kernels.hpp"
#include "relaxlab/solver.hpp"

namespace relaxlab {

namespace {

// Yoshida triple-jump weights turning a symmetric second-order step into a fourth-order one.
const double kW1 = 1.0 / (2.0 - std::cbrt(2.0));
const double kW0 = -std::cbrt(2.0) * kW1;

class JinXinStepper {
public:
    JinXinStepper(const ModelParams& p, const SpectralGrid& g)
        : p_(p), g_(g), fft_(g.N), P_(g.half_size()), M_(g.half_size()), a_(g.N), b_(g.N) {}

    // v <- f(u) + (v - f(u)) e^{-s}: exact flow of v_t = f(u) - v with u frozen.
    void relax(const std::vector<double>& u, std::vector<double>& v, double s) const {
        const double e = std::exp(-s);
        for (std::size_t j = 0; j < u.size(); ++j) {
            const double f = p_.flux(u[j]);
            v[j] = f + (v[j] - f) * e;
        }
    }

    // u +- v travel with speed +-1.
    void transport(std::vector<double>& u, std::vector<double>& v, double s) {
        const int N = g_.N;
        for (int j = 0; j < N; ++j) {
            a_[j] = u[j] + v[j];
            b_[j] = u[j] - v[j];
        }
        fft_.forward(a_, P_);
        fft_.forward(b_, M_);
        for (int k = 0; k < g_.half_size(); ++k) {
            const double xi = g_.xi_half(k);
            const cplx sh(std::cos(xi * s), -std::sin(xi * s));
            P_[k] *= sh;
            M_[k] *= std::conj(sh);
        }
        fft_.inverse(P_, a_);
        fft_.inverse(M_, b_);
        for (int j = 0; j < N; ++j) {
            u[j] = 0.5 * (a_[j] + b_[j]);
            v[j] = 0.5 * (a_[j] - b_[j]);
        }
    }

    void strang(std::vector<double>& u, std::vector<double>& v, double s) {
        relax(u, v, 0.5 * s);
        transport(u, v, s);
        relax(u, v, 0.5 * s);
    }

    void step(std::vector<double>& u, std::vector<double>& v, double h) {
        strang(u, v, kW1 * h);
        strang(u, v, kW0 * h);
        strang(u, v, kW1 * h);
    }

    // u_t = -v_x, spectrally.
    std::vector<double> ut(const std::vector<double>& v) {
        std::vector<double> out(g_.N);
        fft_.forward(v, P_);
        for (int k = 0; k < g_.half_size(); ++k)
            P_[k] *= (k == g_.N / 2) ? cplx(0.0) : cplx(0.0, -g_.xi_half(k));
        fft_.inverse(P_, out);
        return out;
    }

private:
    const ModelParams& p_;
    const SpectralGrid& g_;
    Fft fft_;
    std::vector<cplx> P_, M_;
    std::vector<double> a_, b_;
};

}  // namespace

Trajectory run_jinxin(const ModelParams& params, const InitialData& data, const GridSpec& grid,
                      const SolverOptions& opts) {
    const SpectralGrid& sg = grid.space;
    if (static_cast<int>(data.u0.size()) != sg.N || static_cast<int>(data.u1.size()) != sg.N)
        throw ConsistencyError("initial data size != grid size");
    const double dx = sg.dx();
    double m1 = 0.0, a1 = 0.0;
    for (double v : data.u1) {
        if (!std::isfinite(v)) throw DataError("non-finite initial data");
        m1 += v * dx;
        a1 += std::abs(v) * dx;
    }
    if (std::abs(m1) > 1e-10 * a1)
        throw PreconditionError("u1 must have zero integral for a periodic v0");

    std::vector<double> u = data.u0;
    std::vector<double> v = cumulative_trapezoid(data.u1, dx);
    for (double& x : v) x = -x;

    Trajectory traj;
    traj.grid = grid;
    traj.params = params;
    traj.data = data;
    JinXinStepper stepper(params, sg);

    std::size_t next = 0;
    if (!grid.snapshot_times.empty() && grid.step_of(grid.snapshot_times[0]) == 0) {
        record_snapshot(traj, 0.0, data.u0, data.u1, opts);
        ++next;
    }
    const long steps = grid.steps();
    double last_good = 0.0;
    for (long n = 1; n <= steps; ++n) {
        stepper.step(u, v, grid.dt);
        const double t = n * grid.dt;
        if (opts.check_every > 0 && n % opts.check_every == 0) {
            for (double x : u)
                if (!std::isfinite(x)) throw DivergenceError("solution blew up", last_good);
            last_good = t;
        }
        while (next < grid.snapshot_times.size() && grid.step_of(grid.snapshot_times[next]) == n) {
            try {
                record_snapshot(traj, grid.snapshot_times[next], u, stepper.ut(v), opts);
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
