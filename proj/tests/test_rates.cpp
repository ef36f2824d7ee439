#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "relaxlab/errors.hpp"
#include "relaxlab/rates.hpp"

using namespace relaxlab;

namespace {

std::vector<double> geometric(double t0, double t1, int per_decade) {
    std::vector<double> t;
    for (double x = t0; x <= t1 * (1 + 1e-12); x *= std::pow(10.0, 1.0 / per_decade)) t.push_back(x);
    return t;
}

}  // namespace

TEST(Rates, PurePowerLaw) {
    const auto t = geometric(10.0, 1000.0, 8);
    std::vector<double> e;
    for (double x : t) e.push_back(3.0 * std::pow(x, -0.75));
    const auto f = fit_rate(t, e, 10.0, 1000.0);
    EXPECT_NEAR(f.exponent, -0.75, 1e-12);
    EXPECT_NEAR(f.C_hat, 3.0, 1e-10);
    EXPECT_FALSE(f.log_flag);
    EXPECT_LT(f.residual, 1e-12);
    EXPECT_EQ(f.samples, static_cast<int>(t.size()));
    EXPECT_FALSE(f.local_slopes.empty());
}

TEST(Rates, LogCorrectedSeriesSelectsLogModel) {
    const auto t = geometric(40.0, 2000.0, 8);
    std::vector<double> e;
    for (double x : t) e.push_back(std::log(x) / x);
    const auto f = fit_rate(t, e, 40.0, 2000.0);
    EXPECT_TRUE(f.log_flag);
    EXPECT_NEAR(f.exponent, -1.0, 0.02);
    EXPECT_LT(f.residual_log, 0.9 * f.residual_power);
}

TEST(Rates, WindowRestrictsSamples) {
    const auto t = geometric(1.0, 10000.0, 8);
    std::vector<double> e;
    for (double x : t) e.push_back(x < 100.0 ? 1.0 : std::pow(x, -0.5));
    const auto f = fit_rate(t, e, 100.0, 10000.0);
    EXPECT_NEAR(f.exponent, -0.5, 1e-12);
    EXPECT_GE(f.t_min, 100.0 * (1 - 1e-12));
}

TEST(Rates, Preconditions) {
    const auto t = geometric(10.0, 1000.0, 8);
    std::vector<double> e(t.size(), 1.0);
    EXPECT_THROW(fit_rate(t, e, 10.0, 100.0), PreconditionError);  // one decade only
    std::vector<double> few_t{10.0, 100.0, 1000.0}, few_e{1.0, 0.5, 0.25};
    EXPECT_THROW(fit_rate(few_t, few_e, 10.0, 1000.0), PreconditionError);
}

TEST(Rates, NonPositiveSamplesAreDroppedWithWarning) {
    const auto t = geometric(10.0, 1000.0, 8);
    std::vector<double> e;
    for (double x : t) e.push_back(std::pow(x, -1.0));
    e[5] = 0.0;
    const auto f = fit_rate(t, e, 10.0, 1000.0);
    EXPECT_NEAR(f.exponent, -1.0, 1e-12);
    EXPECT_EQ(f.samples, static_cast<int>(t.size()) - 1);
    EXPECT_FALSE(f.warnings.empty());
}

TEST(Rates, NormSeriesFit) {
    NormSeries s;
    for (double x : geometric(10.0, 1000.0, 4)) s.push(x, std::pow(x, -0.25), std::pow(x, -0.5), std::pow(x, -0.75));
    EXPECT_NEAR(fit_rate(s, NormKind::L2, 10.0, 1000.0).exponent, -0.5, 1e-12);
    EXPECT_NEAR(fit_rate(s, NormKind::Linf, 10.0, 1000.0).exponent, -0.75, 1e-12);
    EXPECT_EQ(&select(s, NormKind::L1), &s.l1);
}

TEST(Rates, FieldNorms) {
    const std::vector<double> f{1.0, -2.0, 3.0, -4.0};
    const auto n = field_norms(f, 0.5);
    EXPECT_DOUBLE_EQ(n.l1, 5.0);
    EXPECT_DOUBLE_EQ(n.l2, std::sqrt(0.5 * 30.0));
    EXPECT_DOUBLE_EQ(n.linf, 4.0);
}

TEST(Rates, LogLogSlope) {
    const std::vector<double> t{1.0, 2.0, 4.0}, e{1.0, 0.25, 0.0625};
    EXPECT_NEAR(loglog_slope(t, e), -2.0, 1e-14);
}
