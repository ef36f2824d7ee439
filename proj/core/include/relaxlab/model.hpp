#pragma once

#include <span>
#include <vector>

#include "relaxlab/grid.hpp"
#include "relaxlab/params.hpp"
#include "relaxlab/profiles.hpp"

namespace relaxlab {

struct InitialData {
    std::vector<double> u0;
    std::vector<double> u1;
    double mass = 0.0;
    double epsilon = 0.0;
};

// Smooth cutoff: 1 for |x| <= 0.8 L, 0 for |x| >= 0.9 L, C-infinity in between.
// Algebraic tails cannot be periodized otherwise; the cutoff sits outside the
// window used to read off tail limits.
double edge_taper(double x, double L);
double edge_taper_dx(double x, double L);

// Window (fractions of L) where tail limits are read off.
struct TailWindow {
    double inner = 0.6;
    double outer = 0.8;
};

// u1 = 0, u0 = chi(x,0) + epsilon * p'(x) with
//   p(x) = (sigma c+_p + (1 - sigma) c-_p) (1 + x tanh x)^{-(gamma-1)} * taper,
// sigma = (1 + tanh x)/2. The pre-images c+-_p are chosen so
// that z0 has the requested tail limits tail.c_plus, tail.c_minus.
InitialData make_calibrated_data(const ModelParams& params, const TailSpec& tail, double M,
                                 double epsilon, const SpectralGrid& grid);

double mass(const InitialData& data, const SpectralGrid& grid);

// Discrete E0^{(s,p)} = |u0|_{W^{s,p}} + |u0|_{L1} + |u1|_{W^{s-1,p}} + |u1|_{L1}
// with spectral derivatives. p may be +infinity.
double smallness(const InitialData& data, const SpectralGrid& grid, int s, double p);

// Heuristic threshold for E0^{(2,2)}; runs above it are flagged, not refused.
inline constexpr double kSmallnessGate = 0.5;

// z0(x) = eta(x,0)^{-1} * int_{-L}^{x} (u0 + u1 - chi(.,0)).
std::vector<double> z0_profile(const InitialData& data, const ProfileSet& ps,
                               const SpectralGrid& grid);

struct TailEstimate {
    double c_plus = 0.0;
    double c_minus = 0.0;
    double rsd_plus = 0.0;
    double rsd_minus = 0.0;
    bool conclusive = true;
};

// Averages (1+|x|)^{gamma-1} z0 over inner*L <= |x| <= outer*L on each side; a
// side whose relative standard deviation exceeds 2% is reported inconclusive.
TailEstimate tail_limits(std::span<const double> z0, double gamma, const SpectralGrid& grid,
                         TailWindow window = {});

// max_j |u0 - chi0| (1+|x_j|)^gamma.
double decay_certificate(const InitialData& data, const ProfileSet& ps, double gamma,
                         const SpectralGrid& grid);

}  // namespace relaxlab
