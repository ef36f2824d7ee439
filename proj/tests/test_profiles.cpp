#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "relaxlab/errors.hpp"
#include "relaxlab/profiles.hpp"
#include "relaxlab/rates.hpp"

using namespace relaxlab;

namespace {

// Composite Simpson on [lo, hi] with n (even) panels.
template <class F>
double simpson(F f, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return s * h / 3.0;
}

// Gamma function straight from its defining integral, split at 1 so the
// algebraic endpoint behaviour is handled by tanh-sinh.
double gamma_by_quadrature(double s) {
    boost::math::quadrature::tanh_sinh<double> ts;
    auto f = [s](double x) { return std::exp(-x) * std::pow(x, s - 1.0); };
    return ts.integrate(f, 0.0, 1.0) + ts.integrate(f, 1.0, std::numeric_limits<double>::infinity());
}

}  // namespace

TEST(Profiles, ChiStarCarriesTheMass) {
    const auto p = ModelParams::make(0.0, 2.0, 0.0);
    ProfileSet ps(p, 0.1);
    const double m = simpson([&](double x) { return ps.chi_star(x); }, -40.0, 40.0, 20000);
    EXPECT_NEAR(m, 0.1, 1e-8);
}

TEST(Profiles, ChiSolvesViscousBurgers) {
    const auto p = ModelParams::make(0.3, 1.5, 0.0);
    ProfileSet ps(p, 0.4);
    const double h = 1e-3;
    for (double t : {0.5, 3.0}) {
        for (double x : {-2.0, 0.1, 1.7, 4.0}) {
            auto chi = [&](double xx, double tt) { return ps.chi(xx, tt); };
            const double ct = (chi(x, t + h) - chi(x, t - h)) / (2 * h);
            auto flux = [&](double xx) {
                const double c = chi(xx, t);
                return p.a * c + 0.5 * p.b * c * c;
            };
            const double fx = (flux(x + h) - flux(x - h)) / (2 * h);
            const double cxx = (chi(x + h, t) - 2 * chi(x, t) + chi(x - h, t)) / (h * h);
            EXPECT_NEAR(ct + fx - p.mu * cxx, 0.0, 5e-6) << "x=" << x << " t=" << t;
        }
    }
}

TEST(Profiles, EtaEndpointsFollowFromTheMass) {
    const auto p = ModelParams::make(0.0, 1.0, 0.0);
    ProfileSet ps(p, 0.1);
    const double m = simpson([&](double x) { return ps.chi_star(x); }, -60.0, 60.0, 20000);
    EXPECT_NEAR(ps.eta_star(60.0), std::exp(p.b * m / (2.0 * p.mu)), 1e-12);
    EXPECT_NEAR(ps.eta_star(-60.0), 1.0, 1e-12);
    EXPECT_NEAR(ps.K(), 0.05, 1e-15);
    // eta_x = b/(2 mu) chi eta
    const double h = 1e-5;
    const double fd = (ps.eta(0.7 + h, 2.0) - ps.eta(0.7 - h, 2.0)) / (2 * h);
    EXPECT_NEAR(ps.eta_x(0.7, 2.0), fd, 1e-9);
}

TEST(Profiles, ChiPointwiseGaussianBound) {
    // chi is centred at a(1+t) while the envelope is centred at at, so for a != 0
    // the ratio grows like exp(a (x - at) / (2 mu (1+t))); the bound is sampled on
    // |x - at| <= 10 sqrt(1+t).
    for (double a : {0.0, 0.4}) {
        const auto p = ModelParams::make(a, 1.0, 0.0);
        const double M = 0.3;
        ProfileSet ps(p, M);
        double C = 0.0;
        for (double t : {0.0, 1.0, 10.0, 100.0, 1000.0}) {
            const double s = std::sqrt(1.0 + t);
            for (double y = -10.0 * s; y <= 10.0 * s; y += 0.01 * s) {
                const double env = std::abs(M) / s * std::exp(-y * y / (4.0 * p.mu * (1.0 + t)));
                C = std::max(C, std::abs(ps.chi(p.a * t + y, t)) / env);
            }
        }
        EXPECT_GT(C, 0.0);
        EXPECT_LT(C, 10.0) << "a=" << a;
    }
}

TEST(Profiles, ChiSupDecaysAtHalfRate) {
    const auto p = ModelParams::make(0.0, 1.0, 0.0);
    ProfileSet ps(p, 0.1);
    std::vector<double> ts, vs;
    for (double t = 10.0; t <= 1000.0 * 1.0001; t *= std::pow(10.0, 0.125)) {
        double m = 0.0;
        for (double x = -20.0 * std::sqrt(1 + t); x <= 20.0 * std::sqrt(1 + t); x += 0.01 * std::sqrt(1 + t))
            m = std::max(m, std::abs(ps.chi(x, t)));
        ts.push_back(t);
        vs.push_back(m);
    }
    EXPECT_NEAR(loglog_slope(ts, vs), -0.5, 0.02);
}

TEST(Profiles, HeatKernelDerivativeL1Slope) {
    std::vector<double> ts, vs;
    for (double t : {10.0, 30.0, 100.0, 300.0, 1000.0}) {
        const double R = 30.0 * std::sqrt(t);
        ts.push_back(t);
        vs.push_back(simpson([&](double x) { return std::abs(heat_kernel_G0_x(x, t, 0.0, 0.75)); },
                             -R, R, 40000));
    }
    EXPECT_NEAR(loglog_slope(ts, vs), -0.5, 1e-3);
    EXPECT_THROW(heat_kernel_G0(0.0, 0.0, 0.0, 1.0), DomainError);
}

TEST(Profiles, VSupNormIdentity) {
    const auto p = ModelParams::make(0.0, 1.0, 1.0);
    ProfileSet ps(p, 0.1);
    const double t = 9.0;
    double vmax = 0.0, vstar = 0.0;
    for (double x = -40.0; x <= 40.0; x += 1e-3) {
        vmax = std::max(vmax, std::abs(ps.V(x, t)));
        vstar = std::max(vstar, std::abs(ps.V_star(x)));
    }
    const double expect = std::abs(p.kappa * ps.d()) * vstar * std::log1p(t) / (1.0 + t);
    EXPECT_NEAR(vmax, expect, 1e-6 * expect);
    EXPECT_EQ(ps.V(0.0, 0.0), 0.0);
}

TEST(Profiles, DIsPositiveAndConverged) {
    const auto p = ModelParams::make(0.0, 1.0, 0.0);
    ProfileSet ps(p, 0.1);
    EXPECT_GT(ps.d(), 0.0);
    const double d1 = compute_d_composite(ps, 200);
    const double d2 = compute_d_composite(ps, 400);
    EXPECT_LT(std::abs(d2 - d1), 1e-10 * d2);
    EXPECT_LT(std::abs(ps.d() - d2), 1e-10 * d2);
    EXPECT_EQ(ProfileSet(p, 0.0).d(), 0.0);
}

TEST(Profiles, NuConstants) {
    const auto p = ModelParams::make(0.0, 1.0, 0.0);
    ProfileSet ps(p, 0.1);

    const auto t = TailSpec::with_gamma(1.5, 1.0, 0.0);
    const double oracle = std::sqrt(p.mu) * gamma_by_quadrature(0.75) +
                          p.b * ps.chi_star0() / 0.5 * gamma_by_quadrature(1.25);
    EXPECT_NEAR(nu0_tilde(ps, t), oracle, 1e-12 * std::abs(oracle));
    EXPECT_NEAR(nu0_tilde(ps, t), 1.2765443349245302, 1e-12);

    const auto sym = TailSpec::with_gamma(1.25, 0.3, 0.3);
    EXPECT_NEAR(nu0_tilde(ps, sym),
                2.0 * p.b * ps.chi_star0() * 0.3 / 0.75 * gamma_by_quadrature(2.0 - 0.625), 1e-12);

    const auto p2 = ModelParams::make(0.0, 1.0, 1.0);
    ProfileSet ps2(p2, 0.1);
    EXPECT_DOUBLE_EQ(nu1_tilde(ps2, TailSpec::with_gamma(2.0, 0.0, 0.0)), -p2.kappa * ps2.d());
    EXPECT_THROW(nu0_tilde(ps, TailSpec::with_gamma(2.0, 1.0, 0.0)), DomainError);
    EXPECT_FALSE(nu_tilde(ps, t).nu1_tilde.has_value());
}

TEST(Profiles, GammaMatchesQuadrature) {
    for (double s : {0.25, 0.5, 0.75, 1.0, 1.25, 2.5})
        EXPECT_NEAR(gamma_fn(s), gamma_by_quadrature(s), 1e-12 * gamma_fn(s));
    EXPECT_NEAR(gamma_fn(0.5), std::sqrt(std::numbers::pi), 1e-15);
    EXPECT_THROW(gamma_fn(0.0), DomainError);
}

TEST(Profiles, ZVanishesWithoutTails) {
    ProfileSet ps(ModelParams::make(0.0, 1.0, 0.0), 0.1);
    const auto t = TailSpec::with_gamma(1.5, 0.0, 0.0);
    EXPECT_EQ(Z_eval(1.0, 5.0, ps, t), 0.0);
    for (double z : Z_on_grid(SpectralGrid::make(50.0, 256), 5.0, ps, t)) EXPECT_EQ(z, 0.0);
    EXPECT_THROW(Z_eval(0.0, 0.0, ps, t), DomainError);
}

TEST(Profiles, ZIsEvenForOddTailsWithoutMass) {
    ProfileSet ps(ModelParams::make(0.0, 1.0, 0.0), 0.0);
    const auto t = TailSpec::with_gamma(1.5, 1.0, -1.0);
    for (double x : {0.3, 1.0, 4.0, 11.0})
        EXPECT_NEAR(Z_eval(x, 7.0, ps, t), Z_eval(-x, 7.0, ps, t), 1e-12);
}

TEST(Profiles, ZMatchesDerivativeOfWeightedHeatFlow) {
    const auto p = ModelParams::make(0.2, 1.0, 0.0);
    ProfileSet ps(p, 0.1);
    const auto tail = TailSpec::with_gamma(1.5, 1.0, 0.4);
    const double t = 6.0;
    // eta * (G0 * w), then a centred difference in x. The weight jumps at 0, so
    // each half-line is integrated with its own one-sided coefficient.
    auto F = [&](double x) {
        const double c = x - p.a * t;
        const double R = 14.0 * std::sqrt(2.0 * p.mu * t);
        auto side = [&](double coef) {
            return [&, coef](double y) {
                return coef * std::pow(1.0 + std::abs(y), 1.0 - tail.gamma) * heat_kernel_G0(x - y, t, p.a, p.mu);
            };
        };
        const double s = simpson(side(tail.c_minus), c - R, 0.0, 40000) + simpson(side(tail.c_plus), 0.0, c + R, 40000);
        return ps.eta(x, t) * s;
    };
    const double h = 1e-3;
    for (double x : {-3.0, 0.5, 2.0, 6.0}) {
        const double fd = (F(x + h) - F(x - h)) / (2 * h);
        EXPECT_NEAR(Z_eval(x, t, ps, tail), fd, 1e-7) << "x=" << x;
    }
}

TEST(Profiles, ZOnGridAgreesWithPointwise) {
    ProfileSet ps(ModelParams::make(0.0, 1.0, 0.0), 0.1);
    const auto tail = TailSpec::with_gamma(1.5, 1.0, 0.0);
    const auto grid = SpectralGrid::make(200.0, 2048);
    auto rel_err = [&](double t, double spacing) {
        const auto Z = Z_on_grid(grid, t, ps, tail, spacing);
        double err = 0.0, mag = 0.0;
        for (int j = 0; j < grid.N; j += 37) {
            const double x = grid.x(j);
            if (std::abs(x) > 0.6 * grid.L) continue;
            const double ref = Z_eval(x, t, ps, tail);
            err = std::max(err, std::abs(Z[j] - ref));
            mag = std::max(mag, std::abs(ref));
        }
        return err / mag;
    };
    // The jump and kink of the weight at 0 make the sampled convolution second order.
    for (double t : {1.0, 40.0}) {
        const double e1 = rel_err(t, 0.05), e2 = rel_err(t, 0.025);
        EXPECT_LT(e1, t < 10.0 ? 5e-4 : 5e-5) << "t=" << t;
        EXPECT_NEAR(e1 / e2, 4.0, 0.4) << "t=" << t;
    }
}

TEST(Profiles, ZUpperBoundConstantIsStable) {
    ProfileSet ps(ModelParams::make(0.0, 1.0, 0.0), 0.1);
    const auto tail = TailSpec::with_gamma(1.5, 1.0, 0.5);
    std::vector<double> C;
    for (double t : {10.0, 100.0, 1000.0}) {
        double m = 0.0;
        const double s = std::sqrt(1.0 + t);
        for (double x = -12.0 * s; x <= 12.0 * s; x += 0.05 * s) m = std::max(m, std::abs(Z_eval(x, t, ps, tail)));
        C.push_back(m * std::pow(1.0 + t, tail.gamma / 2.0) / 1.0);
    }
    const auto [lo, hi] = std::minmax_element(C.begin(), C.end());
    EXPECT_LT(*hi / *lo, 1.5);
}

TEST(Profiles, CenterlineLimitIsPositiveAndAboveLowerBound) {
    ProfileSet ps(ModelParams::make(0.0, 1.0, 0.0), 0.1);
    const auto tail = TailSpec::with_gamma(1.5, 1.0, 0.0);
    EXPECT_NEAR(centerline_limit(ps, tail), 0.26099827196826697, 1e-12);
    EXPECT_GE(std::abs(centerline_limit(ps, tail)), centerline_lower_bound(ps, tail));
}
