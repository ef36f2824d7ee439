#pragma once

#include <string>
#include <utility>
#include <vector>

#include "relaxlab/params.hpp"
#include "relaxlab/profiles.hpp"
#include "relaxlab/rates.hpp"
#include "relaxlab/solver.hpp"

namespace relaxlab {

enum class Status { Pass, Fail, Inconclusive, Degenerate };
const char* to_string(Status s);

// One checked statement. `anchor` names the statement being tested in words;
// `metrics` carries whatever extra numbers the check wants on record.
struct Verdict {
    std::string claim;
    std::string anchor;
    Status status = Status::Inconclusive;
    double target = 0.0;
    double measured = 0.0;
    double tolerance = 0.0;
    double t_min = 0.0, t_max = 0.0;
    double residual = 0.0;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<std::string> notes;

    bool ok() const { return status == Status::Pass || status == Status::Degenerate; }
    void metric(std::string name, double v) { metrics.emplace_back(std::move(name), v); }
};

enum class ProfileCombo { Chi, ChiZ, ChiZV };
const char* to_string(ProfileCombo c);

// Norms of u - (profile combination) at every snapshot. Combinations with Z
// skip t = 0 and are measured on |x| <= interior * L, away from the edge cutoff
// of the data.
NormSeries difference_norms(const Trajectory& traj, ProfileCombo combo, const ProfileSet& ps,
                            const TailSpec& tail, double interior = 1.0);

struct AnalysisOptions {
    // Fitting window [T / window_divisor, T].
    double window_divisor = 50.0;
    double rate_tolerance = 0.1;
    double band_limit = 5.0;
    double band_t_min = 50.0;
    double z_interior = 0.6;
    double min_improvement = 0.05;
    FitOptions fit;
};

// Upper-rate checks for q = 1, 2, inf, plus the log band for gamma = 2.
std::vector<Verdict> verify_theorem_1_1(const Trajectory& traj, const ProfileSet& ps,
                                        const TailSpec& tail, const AnalysisOptions& opt = {});

// Two-sided rate checks: q = inf and q = 1 within tolerance of the target for
// gamma < 2; for gamma = 2 the log band and the log-model selection.
std::vector<Verdict> verify_corollary_1_3(const Trajectory& traj, const ProfileSet& ps,
                                          const TailSpec& tail, const AnalysisOptions& opt = {});

// Second-profile improvement over the final decade.
Verdict verify_theorem_1_2(const Trajectory& traj, const ProfileSet& ps, const TailSpec& tail,
                           const AnalysisOptions& opt = {});

struct SandwichOptions {
    double t_min = 16.0;
    double t_max = 1 << 16;
    int per_octave = 1;
    double convergence = 0.05;
};

// Centreline ratio r(t) from single-point quadrature of Z (plus V for gamma = 2).
Verdict bound_sandwich(const ProfileSet& ps, const TailSpec& tail, SandwichOptions opt = {});

struct Prop51Options {
    double L = 400.0;
    int N = 8192;
    double dt = 0.05;
    double t_min = 10.0;
    double t_max = 1000.0;
    double band_limit = 10.0;
};

// Forced auxiliary problem with lambda = -kappa chi^3 against the profile V.
Verdict verify_prop_5_1(const ProfileSet& ps, Prop51Options opt = {});

// int_0^inf exp(-y^2/(4 mu t)) y^{j-gamma} dy by quadrature and in closed form.
struct GammaIdentity {
    double quadrature = 0.0;
    double closed_form = 0.0;
    double rel_error = 0.0;
};
GammaIdentity gamma_integral_identity(int j, double gamma, double mu, double t);

// (1+t) E / log(1+t) on [t_min, t_max]: returns max/min.
double log_band_ratio(std::span<const double> times, std::span<const double> values,
                      double t_min, double t_max);

}  // namespace relaxlab
