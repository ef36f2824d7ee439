#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "relaxlab/analysis.hpp"
#include "relaxlab/config.hpp"
#include "relaxlab/profiles.hpp"
#include "relaxlab/solver.hpp"

namespace relaxlab {

// Property checks that need no long trajectory. Each builds its own grid.

// Slopes of ||G(t)*phi||_inf and ||(G - G0)(t)*phi||_inf for a Gaussian phi over [10, 1000].
Verdict kernel_estimate_check(double a);

// Heat evolution of phi = p' with p ~ |x|^{1-gamma}: slope -gamma/2 for gamma < 2,
// t/log(2+t) band for gamma = 2.
Verdict moment_check(double gamma, double a);

// Representation formula against the Crank-Nicolson oracle at t = 1, 4, 16.
Verdict representation_check(const ProfileSet& ps);

// ||U[d/dx lambda](t, 0)||_inf against the decay envelope for a Gaussian lambda.
Verdict ubound_check(const ProfileSet& ps);

// chi in the discrete Burgers operator at two resolutions.
Verdict burgers_residual_check(const ProfileSet& ps);

// Damped-wave solver with b = c = 0 against the kernel-module solution.
Verdict linear_exactness_check(double a, double T = 200.0);

// Jin-Xin run on the same data and grid as `reference`.
Verdict jinxin_crosscheck(const Trajectory& reference, const SolverOptions& opts = {});

// Gamma-integral identity for j in {1,2}, gamma in {1.25,1.5,1.75}, t in {1,10}.
Verdict gamma_identity_check(double mu);

// Owns the damped-wave run of one configuration and answers claim ids against it.
class Campaign {
public:
    explicit Campaign(ExperimentConfig cfg, SolverOptions opts = {});

    const ExperimentConfig& config() const { return cfg_; }
    const ModelParams& params() const { return params_; }
    const TailSpec& tail() const { return tail_; }
    const ProfileSet& profiles() const { return *ps_; }
    const InitialData& data();
    const Trajectory& trajectory();
    bool has_trajectory() const { return traj_.has_value(); }

    std::vector<Verdict> run(ClaimId id);

    AnalysisOptions analysis;

private:
    ExperimentConfig cfg_;
    SolverOptions opts_;
    ModelParams params_;
    TailSpec tail_;
    std::unique_ptr<ProfileSet> ps_;
    std::optional<InitialData> data_;
    std::optional<Trajectory> traj_;
};

}  // namespace relaxlab
