#include "relaxlab/profiles.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relaxlab/errors.hpp"

namespace relaxlab {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

double chi_star_impl(double x, double k, double mu, double b) {
    if (k == 0.0) return 0.0;
    const double e = std::exp(-x * x / (4.0 * mu));
    const double den = kSqrtPi * (1.0 + 0.5 * k * std::erfc(x / std::sqrt(4.0 * mu)));
    return std::sqrt(mu) / b * k * e / den;
}

}  // namespace

double chi_star(double x, double M, double mu, double b) {
    return chi_star_impl(x, std::expm1(b * M / (2.0 * mu)), mu, b);
}

double heat_kernel_G0(double x, double t, double a, double mu) {
    if (!(t > 0.0)) throw DomainError("heat kernel needs t > 0");
    const double z = x - a * t;
    return std::exp(-z * z / (4.0 * mu * t)) / std::sqrt(4.0 * std::numbers::pi * mu * t);
}

double heat_kernel_G0_x(double x, double t, double a, double mu) {
    const double z = x - a * t;
    return -z / (2.0 * mu * t) * heat_kernel_G0(x, t, a, mu);
}

ProfileSet::ProfileSet(const ModelParams& params, double M) : p_(params), M_(M) {
    if (!std::isfinite(M)) throw DomainError("mass must be finite");
    K_ = p_.b * M_ / (2.0 * p_.mu);
    k_ = std::expm1(K_);
    d_ = compute_d(*this);
}

double ProfileSet::eta_lower() const { return std::min(1.0, std::exp(K_)); }
double ProfileSet::eta_upper() const { return std::max(1.0, std::exp(K_)); }

double ProfileSet::chi_star(double x) const { return chi_star_impl(x, k_, p_.mu, p_.b); }

double ProfileSet::eta_star(double x) const {
    return std::exp(K_) / (1.0 + 0.5 * k_ * std::erfc(x / std::sqrt(4.0 * p_.mu)));
}

double ProfileSet::V_star(double x) const {
    const double mu = p_.mu;
    return (p_.b * chi_star(x) - x) * eta_star(x) * std::exp(-x * x / (4.0 * mu)) /
           (4.0 * kSqrtPi * std::pow(mu, 1.5));
}

double ProfileSet::similarity(double x, double t) const {
    return (x - p_.a * (1.0 + t)) / std::sqrt(1.0 + t);
}

double ProfileSet::chi(double x, double t) const {
    return chi_star(similarity(x, t)) / std::sqrt(1.0 + t);
}

double ProfileSet::eta(double x, double t) const { return eta_star(similarity(x, t)); }

double ProfileSet::eta_x(double x, double t) const {
    return p_.b / (2.0 * p_.mu) * chi(x, t) * eta(x, t);
}

double ProfileSet::V(double x, double t) const {
    if (t <= 0.0) return 0.0;
    return -p_.kappa * d_ * V_star(similarity(x, t)) * std::log1p(t) / (1.0 + t);
}

double compute_d(const ProfileSet& ps) {
    if (ps.K() == 0.0) return 0.0;
    const double R = 12.0 * std::sqrt(ps.params().mu);
    auto f = [&](double y) {
        const double c = ps.chi_star(y);
        return c * c * c / ps.eta_star(y);
    };
    double err = 0.0;
    const double val =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -R, R, 20, 1e-14, &err);
    if (!(err <= 1e-12 * std::abs(val) + 1e-300))
        throw ToleranceError("quadrature for d did not converge");
    return val;
}

double compute_d_composite(const ProfileSet& ps, int panels) {
    if (panels < 1) throw DomainError("panel count must be positive");
    const double R = 12.0 * std::sqrt(ps.params().mu);
    const double h = 2.0 * R / panels;
    auto f = [&](double y) {
        const double c = ps.chi_star(y);
        return c * c * c / ps.eta_star(y);
    };
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = -R + i * h;
        sum += boost::math::quadrature::gauss<double, 20>::integrate(f, lo, lo + h);
    }
    return sum;
}

double gamma_fn(double s) {
    if (!(s > 0.0)) throw DomainError("Gamma function evaluated at non-positive argument");
    return boost::math::tgamma(s);
}

double nu0_tilde(const ProfileSet& ps, const TailSpec& tail) {
    const double g = tail.gamma;
    if (!(g < 2.0)) throw DomainError("nu0 is singular at gamma = 2");
    const double mu = ps.params().mu;
    return std::sqrt(mu) * (tail.c_plus - tail.c_minus) * gamma_fn((3.0 - g) / 2.0) +
           ps.params().b * ps.chi_star0() * (tail.c_plus + tail.c_minus) / (2.0 - g) *
               gamma_fn(2.0 - g / 2.0);
}

double nu1_tilde(const ProfileSet& ps, const TailSpec& tail) {
    return 0.5 * (tail.c_plus + tail.c_minus) - ps.params().kappa * ps.d();
}

NuConstants nu_tilde(const ProfileSet& ps, const TailSpec& tail) {
    NuConstants n;
    if (tail.gamma < 2.0)
        n.nu0_tilde = nu0_tilde(ps, tail);
    else
        n.nu1_tilde = nu1_tilde(ps, tail);
    return n;
}

namespace {

double centerline_scale(const ProfileSet& ps, const TailSpec& tail) {
    const double mu = ps.params().mu;
    const double base = 1.0 / (4.0 * kSqrtPi * std::pow(mu, 1.5));
    if (tail.gamma < 2.0)
        return base * std::pow(2.0, 2.0 - tail.gamma) * std::pow(mu, 1.0 - tail.gamma / 2.0) *
               nu0_tilde(ps, tail);
    return base * ps.params().b * ps.chi_star0() * nu1_tilde(ps, tail);
}

}  // namespace

double centerline_limit(const ProfileSet& ps, const TailSpec& tail) {
    return ps.eta_star(0.0) * centerline_scale(ps, tail);
}

double centerline_lower_bound(const ProfileSet& ps, const TailSpec& tail) {
    return ps.eta_lower() * std::abs(centerline_scale(ps, tail));
}

}  // namespace relaxlab
