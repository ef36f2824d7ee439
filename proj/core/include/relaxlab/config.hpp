#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relaxlab/params.hpp"
#include "relaxlab/solver.hpp"

namespace relaxlab {

enum class ClaimId {
    THM11_RATE_L1,
    THM11_RATE_L2,
    THM11_RATE_LINF,
    THM12_Z,
    THM12_ZV,
    COR13_SHARP,
    LEM21_KERNEL,
    LEM24_MOMENT,
    LEM26_REPR,
    LEM27_UBOUND,
    PROP51_V,
    SANDWICH_123,
    SANDWICH_124,
    BURGERS_RESID,
    JINXIN_XCHECK,
};

const char* to_string(ClaimId id);
ClaimId parse_claim(const std::string& s);  // ConfigError on unknown ids
const std::vector<ClaimId>& all_claims();
std::vector<ClaimId> parse_claim_list(const std::string& csv);

inline constexpr const char* kConfigFormat = "relaxlab-config/1";

// Flat "key = value" file. Lines starting with '#' are comments. The first
// non-comment line must be "format = relaxlab-config/1".
//
//   a, b, c            flux coefficients
//   mass               M
//   alpha, beta        tail exponents; gamma = min(alpha, beta)
//   c_plus, c_minus    requested tail limits of z0; c_minus = auto means 0 for
//                      gamma < 2 and c_plus for gamma = 2
//   epsilon            size of the tail perturbation
//   L                  half width, or "auto"
//   N, dt, T           grid size, time step, horizon
//   snapshots_per_octave
//   checks             comma separated claim ids
//   output             output directory
struct ExperimentConfig {
    double a = 0.0;
    double b = 1.0;
    double c = 0.0;
    double mass = 0.1;
    double alpha = 1.5;
    double beta = 1.5;
    double c_plus = 0.04;
    std::optional<double> c_minus;  // unset: automatic, see above
    double epsilon = 0.01;
    std::optional<double> L;
    int N = 1 << 15;
    double dt = 0.05;
    double T = 2000.0;
    int snapshots_per_octave = 4;
    std::vector<ClaimId> checks;
    std::string output = "out";

    double gamma() const { return std::min(alpha, beta); }
    double resolved_c_minus() const;
    ModelParams params() const;
    TailSpec tail() const;
    double half_width() const;
    GridSpec grid() const;
    // Runs every constructor-level validation without doing any numerical work.
    void validate() const;
    // Same config with alpha = beta = g.
    ExperimentConfig with_gamma(double g) const;
};

ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::string& path);
std::string to_text(const ExperimentConfig& cfg);

}  // namespace relaxlab
