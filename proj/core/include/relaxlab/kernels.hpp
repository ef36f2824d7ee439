#pragma once

#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "relaxlab/grid.hpp"
#include "relaxlab/profiles.hpp"

namespace relaxlab {

using cplx = std::complex<double>;

// Roots of lambda^2 + lambda + (xi^2 + i a xi) = 0; lambda1 is the one tending to 0 as xi -> 0.
std::pair<cplx, cplx> lambda12(double xi, double a);

// Symbol of the damped-wave Green function and its time derivative.
cplx G_hat(double xi, double t, double a);
cplx dtG_hat(double xi, double t, double a);
// Coincidence form e^{-t/2} t sinh(z)/z, z = (lambda1-lambda2) t/2, valid for any xi;
// G_hat switches to it when |lambda1 - lambda2| < 1e-6.
cplx G_hat_coincident(double xi, double t, double a);
cplx dtG_hat_coincident(double xi, double t, double a);

enum class KernelKind { G, dtG, G0, GminusG0 };

// Per-mode symbol of the requested kernel times (i xi)^dx_order.
cplx kernel_symbol(KernelKind kind, double xi, double t, double a, double mu, int dx_order = 0);
// Multiplier values on the full FFT ordering of a grid; Nyquist entry made real.
std::vector<cplx> multiplier(const SpectralGrid& grid, KernelKind kind, double t, double a,
                             double mu, int dx_order = 0);

// Applies the kernel to a real field via a full complex FFT and checks that the
// imaginary residue of the result stays below 1e-12 of the field norm.
std::vector<double> apply_G(const SpectralGrid& grid, std::span<const double> phi, double t,
                            KernelKind kind, double a, double mu, int dx_order = 0);

struct MomentSeries {
    std::vector<double> times;
    std::vector<double> linf;
    std::vector<double> l1;
};

// Heat evolution of a zero-mean field; the trapezoid mean must be below
// 1e-10 of the L1 norm. Exponents are fitted by the caller (see rates.hpp).
MomentSeries convolve_G0_moment_test(const SpectralGrid& grid, std::span<const double> phi,
                                     std::span<const double> times, double a, double mu);

// U-operator of the auxiliary problem:
//   U[h](x,t,tau) = int d/dx( G0(x-y,t-tau) eta(x,t) ) eta(y,tau)^{-1} H(y) dy,
// with H the cumulative integral of h from -L. The y-integral is a spectral
// (periodic trapezoid) convolution after removing the constant limit of
// eta^{-1} H at +L, whose heat evolution is known in closed form.
std::vector<double> U_apply(const ProfileSet& ps, const SpectralGrid& grid,
                            std::span<const double> h, double t, double tau);
std::vector<double> U_apply_antiderivative(const ProfileSet& ps, const SpectralGrid& grid,
                                           std::span<const double> H, double t, double tau);

// z(t) = U[z0](t,0) + int_0^t U[d/dx lambda(tau)](t,tau) dtau, with lambda(tau)
// supplied on the grid. The tau integral uses composite Gauss-Legendre.
std::vector<double> representation_formula(
    const ProfileSet& ps, const SpectralGrid& grid, std::span<const double> z0,
    const std::function<std::vector<double>(double)>& lambda, double t, int panels = 32);

// Cumulative trapezoid integral from the left end of a periodic grid.
std::vector<double> cumulative_trapezoid(std::span<const double> f, double dx);

}  // namespace relaxlab
