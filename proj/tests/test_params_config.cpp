#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "relaxlab/config.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/params.hpp"

using namespace relaxlab;

TEST(ModelParams, DerivedConstants) {
    const auto p = ModelParams::make(0.5, 2.0, 3.0);
    EXPECT_DOUBLE_EQ(p.mu, 0.75);
    // a b^2 / (4 mu) + c / 6 = 0.5 * 4 / 3 + 0.5
    EXPECT_NEAR(p.kappa, 2.0 / 3.0 + 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(p.flux(2.0), 0.5 * 2.0 + 0.5 * 2.0 * 4.0 + 3.0 * 8.0 / 6.0);
    EXPECT_DOUBLE_EQ(p.g(2.0), p.flux(2.0) - 0.5 * 2.0);
}

TEST(ModelParams, BurgersFluxHasZeroKappa) {
    EXPECT_EQ(ModelParams::make(0.0, 1.0, 0.0).kappa, 0.0);
    EXPECT_NEAR(ModelParams::make(0.0, 1.0, 1.0).kappa, 1.0 / 6.0, 1e-16);
}

TEST(ModelParams, RejectsInadmissible) {
    EXPECT_THROW(ModelParams::make(1.0, 1.0, 0.0), DomainError);
    EXPECT_THROW(ModelParams::make(-1.2, 1.0, 0.0), DomainError);
    EXPECT_THROW(ModelParams::make(0.0, 0.0, 0.0), DomainError);
    EXPECT_THROW(ModelParams::make(NAN, 1.0, 0.0), DomainError);
}

TEST(TailSpec, GammaIsMinimum) {
    const auto t = TailSpec::make(1.8, 1.3, 1.0, 0.0);
    EXPECT_DOUBLE_EQ(t.gamma, 1.3);
    EXPECT_FALSE(t.critical());
    EXPECT_TRUE(TailSpec::make(2.5, 2.0, 0.0, 0.0).critical());
    EXPECT_EQ(t.coefficient(3.0), 1.0);
    EXPECT_EQ(t.coefficient(-3.0), 0.0);
}

TEST(TailSpec, RejectsGammaOutsideRange) {
    try {
        TailSpec::make(2.5, 2.5, 0.0, 0.0);
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("gamma outside (1,2]"), std::string::npos);
    }
    EXPECT_THROW(TailSpec::make(1.0, 1.5, 0.0, 0.0), DomainError);
}

namespace {

ExperimentConfig parse(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is);
}

}  // namespace

TEST(Config, Defaults) {
    const auto cfg = parse("format = relaxlab-config/1\n");
    EXPECT_EQ(cfg.N, 32768);
    EXPECT_EQ(cfg.T, 2000.0);
    EXPECT_EQ(cfg.gamma(), 1.5);
    EXPECT_EQ(cfg.resolved_c_minus(), 0.0);
    EXPECT_EQ(cfg.with_gamma(2.0).resolved_c_minus(), cfg.c_plus);
    EXPECT_NEAR(cfg.half_width(), 40.0 * std::sqrt(2001.0), 1e-12);
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, ParsesEveryKey) {
    const auto cfg = parse(R"(# comment
format = relaxlab-config/1
a = 0.25
b = 2
c = -1
mass = 0.2
alpha = 1.75
beta = 2
c_plus = 0.5
c_minus = -0.5
epsilon = 0.02
L = 300
N = 4096
dt = 0.1
T = 100
snapshots_per_octave = 2
checks = THM11_RATE_L1, LEM21_KERNEL
output = somewhere
)");
    EXPECT_EQ(cfg.a, 0.25);
    EXPECT_EQ(cfg.c, -1.0);
    EXPECT_EQ(cfg.gamma(), 1.75);
    EXPECT_EQ(cfg.resolved_c_minus(), -0.5);
    EXPECT_EQ(cfg.half_width(), 300.0);
    EXPECT_EQ(cfg.N, 4096);
    ASSERT_EQ(cfg.checks.size(), 2u);
    EXPECT_EQ(cfg.checks[1], ClaimId::LEM21_KERNEL);
    EXPECT_EQ(cfg.output, "somewhere");
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, TextRoundTrip) {
    auto cfg = parse("format = relaxlab-config/1\nc_plus = 0.125\nL = 77.5\nchecks = COR13_SHARP\n");
    const auto again = parse(to_text(cfg));
    EXPECT_EQ(to_text(again), to_text(cfg));
    EXPECT_EQ(*again.L, 77.5);
    EXPECT_FALSE(again.c_minus.has_value());
}

TEST(Config, Errors) {
    EXPECT_THROW(parse("a = 0\n"), ConfigError);
    EXPECT_THROW(parse("format = relaxlab-config/2\n"), ConfigError);
    EXPECT_THROW(parse("format = relaxlab-config/1\nbogus = 1\n"), ConfigError);
    EXPECT_THROW(parse("format = relaxlab-config/1\na = 0\na = 0.1\n"), ConfigError);
    EXPECT_THROW(parse("format = relaxlab-config/1\nN = 12x\n"), ConfigError);
    EXPECT_THROW(parse("format = relaxlab-config/1\nchecks = NOPE\n"), ConfigError);
    EXPECT_THROW(parse("format = relaxlab-config/1\nno equals sign\n"), ConfigError);
    EXPECT_THROW(parse(""), ConfigError);
    EXPECT_THROW(parse("format = relaxlab-config/1\nalpha = 2.5\nbeta = 3\n").validate(), DomainError);
    EXPECT_THROW(parse("format = relaxlab-config/1\nN = 1000\n").validate(), DomainError);
}

TEST(Config, ClaimIdsRoundTrip) {
    for (ClaimId id : all_claims()) EXPECT_EQ(parse_claim(to_string(id)), id);
    EXPECT_EQ(all_claims().size(), 15u);
}
