#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "relaxlab/checks.hpp"
#include "relaxlab/config.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/model.hpp"
#include "relaxlab/rates.hpp"
#include "relaxlab/solver.hpp"

using namespace relaxlab;

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

struct Small {
    ExperimentConfig cfg;
    GridSpec grid;
    InitialData data;
};

Small small_problem(double T, int N) {
    Small s;
    s.cfg.T = T;
    s.cfg.N = N;
    s.cfg.L = 200.0;
    s.grid = s.cfg.grid();
    s.data = make_calibrated_data(s.cfg.params(), s.cfg.tail(), s.cfg.mass, s.cfg.epsilon, s.grid.space);
    return s;
}

}  // namespace

TEST(GridSpec, DefaultsAndSnapshots) {
    EXPECT_NEAR(GridSpec::default_half_width(2000.0, 1.5), 40.0 * std::sqrt(2001.0), 1e-12);
    EXPECT_NEAR(GridSpec::default_half_width(10.0, 1.05), 400.0, 1e-9);
    const auto t = GridSpec::geometric_times(100.0, 0.05, 2);
    EXPECT_EQ(t.front(), 0.0);
    EXPECT_EQ(t.back(), 100.0);
    EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
    EXPECT_NEAR(t[1], 1.0, 1e-12);
    EXPECT_NEAR(t[2], 1.4, 1e-12);
    EXPECT_THROW(GridSpec::make(10.0, 64, 0.3, 1.0, {}), DomainError);
    EXPECT_THROW(GridSpec::make(10.0, 64, 0.1, 1.0, {2.0}), DomainError);
    const auto g = GridSpec::make(10.0, 64, 0.1, 1.0, {0.5, 0.5000001, 0.2});
    EXPECT_EQ(g.snapshot_times.size(), 2u);
    EXPECT_EQ(g.steps(), 10);
}

TEST(DampedWave, LinearRunMatchesKernels) {
    const auto v = linear_exactness_check(0.3, 40.0);
    EXPECT_EQ(v.status, Status::Pass) << v.measured;
    EXPECT_LT(v.measured, 1e-10);
}

TEST(DampedWave, SmallDataDecaysAtHeatRate) {
    ExperimentConfig cfg;
    cfg.T = 1000.0;
    cfg.N = 8192;
    cfg.snapshots_per_octave = 4;
    const auto grid = cfg.grid();
    const auto data = make_calibrated_data(cfg.params(), cfg.tail(), cfg.mass, cfg.epsilon, grid.space);
    const auto traj = run_damped_wave(cfg.params(), data, grid);
    std::vector<double> t, e;
    for (const auto& s : traj.snapshots)
        if (s.t >= 10.0) {
            t.push_back(s.t);
            e.push_back(max_abs(s.u));
        }
    EXPECT_NEAR(fit_rate(t, e, 10.0, 1000.0).exponent_power, -0.5, 0.05);
    // int (u + u_t) is conserved; its initial value carries the discretisation
    // error of the data, so it is compared with the first record.
    ASSERT_FALSE(traj.diagnostics.empty());
    const double I0 = traj.diagnostics.front().integral;
    EXPECT_NEAR(I0, cfg.mass, 1e-7);
    for (const auto& r : traj.diagnostics) EXPECT_NEAR(r.integral, I0, 1e-12);
}

TEST(DampedWave, IsDeterministic) {
    const auto s = small_problem(5.0, 2048);
    const auto a = run_damped_wave(s.cfg.params(), s.data, s.grid);
    const auto b = run_damped_wave(s.cfg.params(), s.data, s.grid);
    ASSERT_EQ(a.snapshots.size(), b.snapshots.size());
    for (std::size_t i = 0; i < a.snapshots.size(); ++i) EXPECT_EQ(a.snapshots[i].u, b.snapshots[i].u);
}

TEST(DampedWave, RejectsMismatchedData) {
    auto s = small_problem(5.0, 2048);
    s.data.u0.pop_back();
    EXPECT_THROW(run_damped_wave(s.cfg.params(), s.data, s.grid), Error);
}

TEST(JinXin, AgreesWithDampedWave) {
    const auto s = small_problem(30.0, 2048);
    const auto dw = run_damped_wave(s.cfg.params(), s.data, s.grid);
    const auto jx = run_jinxin(s.cfg.params(), s.data, s.grid);
    ASSERT_EQ(dw.snapshots.size(), jx.snapshots.size());
    for (std::size_t i = 0; i < dw.snapshots.size(); ++i) {
        double err = 0.0;
        for (std::size_t j = 0; j < dw.snapshots[i].u.size(); ++j)
            err = std::max(err, std::abs(dw.snapshots[i].u[j] - jx.snapshots[i].u[j]));
        EXPECT_LT(err, 1e-4 * max_abs(dw.snapshots[i].u)) << "t=" << dw.snapshots[i].t;
    }
}

TEST(Auxiliary, UnforcedProblemWithoutMassIsHeatFlow) {
    ProfileSet ps(ModelParams::make(0.0, 1.0, 0.0), 0.0);
    const auto grid = GridSpec::make(40.0, 2048, 0.01, 4.0, {0.0, 1.0, 4.0});
    std::vector<double> z0(grid.space.N);
    for (int j = 0; j < grid.space.N; ++j) z0[j] = heat_kernel_G0(grid.space.x(j), 1.0, 0.0, 1.0);
    const auto traj = solve_auxiliary(z0, [&](double) { return std::vector<double>(grid.space.N, 0.0); }, ps, grid);
    const auto& last = traj.snapshots.back();
    double err = 0.0;
    for (int j = 0; j < grid.space.N; ++j)
        err = std::max(err, std::abs(last.u[j] - heat_kernel_G0(grid.space.x(j), 5.0, 0.0, 1.0)));
    EXPECT_LT(err, 1e-4 * max_abs(last.u));
}

TEST(Burgers, ProfileResidualIsSecondOrder) {
    ProfileSet ps(ModelParams::make(0.0, 1.0, 0.0), 0.1);
    const auto v = burgers_residual_check(ps);
    EXPECT_EQ(v.status, Status::Pass);
    EXPECT_GE(v.measured, 3.0);
}

TEST(Burgers, SampledChiHasTheRequestedTimes) {
    ProfileSet ps(ModelParams::make(0.0, 1.0, 0.0), 0.1);
    const auto g = SpectralGrid::make(30.0, 256);
    const auto traj = sample_chi(ps, g, {0.0, 1.0, 2.0});
    ASSERT_EQ(traj.snapshots.size(), 3u);
    EXPECT_EQ(traj.snapshots[1].u[100], ps.chi(g.x(100), 1.0));
    const auto res = pde_residual(traj, ResidualKind::Burgers);
    ASSERT_EQ(res.size(), 1u);
    EXPECT_EQ(res[0].t, 1.0);
}
