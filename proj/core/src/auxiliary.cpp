#include <cmath>

#include "relaxlab/errors.hpp"
#include "relaxlab/solver.hpp"

namespace relaxlab {

namespace {

// Solves the periodic tridiagonal system
//   lo[j] x[j-1] + di[j] x[j] + up[j] x[j+1] = r[j]   (indices mod n)
// by the Sherman-Morrison reduction to two ordinary tridiagonal solves.
class CyclicTridiagonal {
public:
    explicit CyclicTridiagonal(int n) : n_(n), c_(n), z_(n), bb_(n), u_(n) {}

    void solve(const std::vector<double>& lo, const std::vector<double>& di,
               const std::vector<double>& up, const std::vector<double>& r,
               std::vector<double>& x) {
        const int n = n_;
        const double alpha = up[n - 1];  // corner (n-1, 0)
        const double beta = lo[0];       // corner (0, n-1)
        const double gamma = -di[0];
        bb_ = di;
        bb_[0] = di[0] - gamma;
        bb_[n - 1] = di[n - 1] - alpha * beta / gamma;
        thomas(lo, bb_, up, r, x);
        for (int j = 0; j < n; ++j) u_[j] = 0.0;
        u_[0] = gamma;
        u_[n - 1] = alpha;
        thomas(lo, bb_, up, u_, z_);
        const double fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z_[0] + beta * z_[n - 1] / gamma);
        if (!std::isfinite(fact)) throw NumericalError("cyclic tridiagonal solve failed");
        for (int j = 0; j < n; ++j) x[j] -= fact * z_[j];
    }

private:
    void thomas(const std::vector<double>& lo, const std::vector<double>& di,
                const std::vector<double>& up, const std::vector<double>& r,
                std::vector<double>& x) {
        const int n = n_;
        double piv = di[0];
        if (piv == 0.0) throw NumericalError("zero pivot in tridiagonal solve");
        x[0] = r[0] / piv;
        for (int j = 1; j < n; ++j) {
            c_[j] = up[j - 1] / piv;
            piv = di[j] - lo[j] * c_[j];
            if (piv == 0.0) throw NumericalError("zero pivot in tridiagonal solve");
            x[j] = (r[j] - lo[j] * x[j - 1]) / piv;
        }
        for (int j = n - 2; j >= 0; --j) x[j] -= c_[j + 1] * x[j + 1];
    }

    int n_;
    std::vector<double> c_, z_, bb_, u_;
};

}  // namespace

Trajectory solve_auxiliary(std::span<const double> z0, const ForcingFn& lambda,
                           const ProfileSet& ps, const GridSpec& grid) {
    const SpectralGrid& sg = grid.space;
    const int N = sg.N;
    if (static_cast<int>(z0.size()) != N) throw ConsistencyError("field size != grid size");
    const double dx = sg.dx();
    const double dt = grid.dt;
    const ModelParams& p = ps.params();

    Trajectory traj;
    traj.grid = grid;
    traj.params = p;
    traj.data.u0.assign(z0.begin(), z0.end());
    traj.data.u1.assign(N, 0.0);
    double m = 0.0;
    for (double v : z0) m += v * dx;
    traj.data.mass = m;

    std::vector<double> z(z0.begin(), z0.end()), znew(N), rhs(N), c(N);
    std::vector<double> lo(N), di(N), up(N);
    CyclicTridiagonal solver(N);

    std::size_t next = 0;
    auto record = [&](double t, const std::vector<double>& prev) {
        std::vector<double> ut(N, 0.0);
        if (t > 0.0)
            for (int j = 0; j < N; ++j) ut[j] = (z[j] - prev[j]) / dt;
        double peak = 0.0, integral = 0.0;
        for (int j = 0; j < N; ++j) {
            peak = std::max(peak, std::abs(z[j]));
            integral += z[j] * dx;
        }
        traj.diagnostics.push_back({t, peak, integral, 0.0});
        traj.snapshots.push_back({t, z, std::move(ut)});
    };
    if (!grid.snapshot_times.empty() && grid.step_of(grid.snapshot_times[0]) == 0) {
        record(0.0, z);
        ++next;
    }

    const double ia = 1.0 / (2.0 * dx);
    const double id2 = p.mu / (dx * dx);
    const long steps = grid.steps();
    for (long n = 0; n < steps; ++n) {
        const double th = (n + 0.5) * dt;
        for (int j = 0; j < N; ++j) c[j] = p.b * ps.chi(sg.x(j), th);
        // A z at node j = l_j z_{j-1} + d z_j + u_j z_{j+1}
        for (int j = 0; j < N; ++j) {
            const int jm = (j + N - 1) % N, jp = (j + 1) % N;
            const double l = (p.a + c[jm]) * ia + id2;
            const double u = -(p.a + c[jp]) * ia + id2;
            const double d = -2.0 * id2;
            rhs[j] = z[j] + 0.5 * dt * (l * z[jm] + d * z[j] + u * z[jp]);
            lo[j] = -0.5 * dt * l;
            di[j] = 1.0 - 0.5 * dt * d;
            up[j] = -0.5 * dt * u;
        }
        if (lambda) {
            const auto lam = lambda(th);
            if (static_cast<int>(lam.size()) != N) throw ConsistencyError("forcing size != grid size");
            for (int j = 0; j < N; ++j)
                rhs[j] += dt * (lam[(j + 1) % N] - lam[(j + N - 1) % N]) * ia;
        }
        solver.solve(lo, di, up, rhs, znew);
        std::swap(z, znew);
        while (next < grid.snapshot_times.size() && grid.step_of(grid.snapshot_times[next]) == n + 1) {
            record(grid.snapshot_times[next], znew);
            ++next;
        }
    }
    return traj;
}

Trajectory sample_chi(const ProfileSet& ps, const SpectralGrid& grid,
                      const std::vector<double>& times) {
    Trajectory traj;
    traj.grid.space = grid;
    traj.grid.dt = 0.0;
    traj.grid.T = times.empty() ? 0.0 : times.back();
    traj.grid.snapshot_times = times;
    traj.params = ps.params();
    traj.data.mass = ps.mass();
    for (double t : times) {
        std::vector<double> u(grid.N);
        for (int j = 0; j < grid.N; ++j) u[j] = ps.chi(grid.x(j), t);
        traj.snapshots.push_back({t, std::move(u), {}});
    }
    return traj;
}

std::vector<ResidualPoint> pde_residual(const Trajectory& traj, ResidualKind which) {
    const auto& s = traj.snapshots;
    if (s.size() < 3) throw PreconditionError("residual needs at least three snapshots");
    const int N = traj.grid.space.N;
    const double dx = traj.grid.space.dx();
    const ModelParams& p = traj.params;
    std::vector<ResidualPoint> out;
    std::vector<double> f(N);
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double h1 = s[i].t - s[i - 1].t, h2 = s[i + 1].t - s[i].t;
        if (!(h1 > 0.0 && h2 > 0.0)) throw PreconditionError("snapshot times must increase");
        const double c0 = -h2 / (h1 * (h1 + h2)), c1 = (h2 - h1) / (h1 * h2),
                     c2 = h1 / (h2 * (h1 + h2));
        const double d0 = 2.0 / (h1 * (h1 + h2)), d1 = -2.0 / (h1 * h2),
                     d2 = 2.0 / (h2 * (h1 + h2));
        const auto& u0 = s[i - 1].u;
        const auto& u1 = s[i].u;
        const auto& u2 = s[i + 1].u;
        for (int j = 0; j < N; ++j)
            f[j] = which == ResidualKind::Burgers ? p.a * u1[j] + 0.5 * p.b * u1[j] * u1[j]
                                                  : p.flux(u1[j]);
        double worst = 0.0;
        for (int j = 0; j < N; ++j) {
            const int jm = (j + N - 1) % N, jp = (j + 1) % N;
            const double ut = c0 * u0[j] + c1 * u1[j] + c2 * u2[j];
            const double uxx = (u1[jp] - 2.0 * u1[j] + u1[jm]) / (dx * dx);
            const double fx = (f[jp] - f[jm]) / (2.0 * dx);
            double r;
            if (which == ResidualKind::Burgers) {
                r = ut + fx - p.mu * uxx;
            } else {
                const double utt = d0 * u0[j] + d1 * u1[j] + d2 * u2[j];
                r = utt - uxx + ut + fx;
            }
            worst = std::max(worst, std::abs(r));
        }
        out.push_back({s[i].t, worst});
    }
    return out;
}

}  // namespace relaxlab
