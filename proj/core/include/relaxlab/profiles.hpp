#pragma once

#include <optional>
#include <span>
#include <vector>

#include "relaxlab/grid.hpp"
#include "relaxlab/params.hpp"

namespace relaxlab {

// Diffusion-wave profile of mass M for the viscous Burgers equation
// chi_t + (a chi + b chi^2/2)_x = mu chi_xx.
double chi_star(double x, double M, double mu, double b);

// Drifted heat kernel (4 pi mu t)^{-1/2} exp(-(x - a t)^2 / (4 mu t)); t <= 0 is a DomainError.
double heat_kernel_G0(double x, double t, double a, double mu);
double heat_kernel_G0_x(double x, double t, double a, double mu);

// Asymptotic profiles for a given flux and mass. The weight eta* is the
// Cole-Hopf exponential of the cumulative diffusion wave; both it and chi*
// have closed forms in terms of erfc, so nothing is tabulated.
class ProfileSet {
public:
    ProfileSet(const ModelParams& params, double M);

    const ModelParams& params() const { return p_; }
    double mass() const { return M_; }
    double d() const { return d_; }
    // b M / (2 mu): eta* runs from 1 at -inf to exp(K) at +inf.
    double K() const { return K_; }
    double eta_lower() const;
    double eta_upper() const;

    double chi_star(double x) const;
    double chi_star0() const { return chi_star(0.0); }
    double eta_star(double x) const;
    double V_star(double x) const;

    double chi(double x, double t) const;
    double eta(double x, double t) const;
    double eta_x(double x, double t) const;
    double V(double x, double t) const;

    // Similarity variable (x - a(1+t)) / sqrt(1+t).
    double similarity(double x, double t) const;

private:
    ModelParams p_;
    double M_;
    double K_;
    double k_;  // expm1(K)
    double d_ = 0.0;
};

// d = int (eta*)^{-1} (chi*)^3 dy over |y| <= 12 sqrt(mu), adaptive Gauss-Kronrod.
double compute_d(const ProfileSet& ps);
// Same integral by composite Gauss-Legendre with the given panel count; used as a
// convergence oracle for compute_d.
double compute_d_composite(const ProfileSet& ps, int panels);

// Second profile Z at a single point, by adaptive quadrature in y.
double Z_eval(double x, double t, const ProfileSet& ps, const TailSpec& tail);
// Z on every node of a grid, from one FFT convolution on a refined, enlarged grid.
std::vector<double> Z_on_grid(const SpectralGrid& grid, double t, const ProfileSet& ps,
                              const TailSpec& tail, double max_spacing = 0.05);

double gamma_fn(double s);

struct NuConstants {
    std::optional<double> nu0_tilde;
    std::optional<double> nu1_tilde;
};

double nu0_tilde(const ProfileSet& ps, const TailSpec& tail);
double nu1_tilde(const ProfileSet& ps, const TailSpec& tail);
NuConstants nu_tilde(const ProfileSet& ps, const TailSpec& tail);

// Closed-form limits of the centreline ratios r(t) used by the sandwich checks:
// (1+t)^{gamma/2} Z(at,t) for gamma < 2 and (1+t)/log(1+t) (Z+V)(at,t) for gamma = 2.
double centerline_limit(const ProfileSet& ps, const TailSpec& tail);
// The lower-bound expression with eta*(0) replaced by min{1, exp(K)}.
double centerline_lower_bound(const ProfileSet& ps, const TailSpec& tail);

}  // namespace relaxlab
