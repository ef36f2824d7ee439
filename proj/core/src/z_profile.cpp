#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <complex>
#include <vector>

#include "relaxlab/errors.hpp"
#include "relaxlab/fft.hpp"
#include "relaxlab/profiles.hpp"

namespace relaxlab {

namespace {

// Gaussian weight exp(-s^2/(4 mu t)) is below 1e-36 beyond this many sqrt(2 mu t).
constexpr double kWindow = 13.0;

double tail_weight(const TailSpec& tail, double y) {
    return tail.coefficient(y) * std::pow(1.0 + std::abs(y), 1.0 - tail.gamma);
}

}  // namespace

double Z_eval(double x, double t, const ProfileSet& ps, const TailSpec& tail) {
    if (!(t > 0.0)) throw DomainError("Z is evaluated for t > 0 only");
    if (tail.c_plus == 0.0 && tail.c_minus == 0.0) return 0.0;
    const double a = ps.params().a;
    const double mu = ps.params().mu;
    const double y0 = x - a * t;
    const double W = kWindow * std::sqrt(2.0 * mu * t);
    const double lo = y0 - W;
    const double hi = y0 + W;

    // The weight jumps at 0 and has a kink there; the geometric breakpoints keep
    // the algebraic factor resolved when the Gaussian is much wider than 1.
    std::vector<double> cuts{lo, hi, y0};
    for (double s = 1.0; s < std::max(std::abs(lo), std::abs(hi)); s *= 2.0) {
        cuts.push_back(s);
        cuts.push_back(-s);
    }
    cuts.push_back(0.0);
    std::erase_if(cuts, [&](double c) { return c < lo || c > hi; });
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto f0 = [&](double y) { return tail_weight(tail, y) * heat_kernel_G0(x - y, t, a, mu); };
    auto f1 = [&](double y) { return tail_weight(tail, y) * heat_kernel_G0_x(x - y, t, a, mu); };

    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    double I0 = 0.0, I1 = 0.0, err = 0.0, mag = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double e0 = 0.0, e1 = 0.0, m0 = 0.0, m1 = 0.0;
        I0 += GK::integrate(f0, cuts[i], cuts[i + 1], 15, 1e-13, &e0, &m0);
        I1 += GK::integrate(f1, cuts[i], cuts[i + 1], 15, 1e-13, &e1, &m1);
        err += e0 + e1;
        mag += m0 + m1;
    }
    // Absolute floor for windows that only graze the support of the weight.
    const double floor = 1e-13 * std::max(std::abs(tail.c_plus), std::abs(tail.c_minus)) /
                         std::sqrt(4.0 * std::numbers::pi * mu * t);
    if (!(err <= 1e-9 * mag + floor)) throw ToleranceError("Z quadrature did not converge");
    return ps.eta(x, t) * I1 + ps.eta_x(x, t) * I0;
}

std::vector<double> Z_on_grid(const SpectralGrid& grid, double t, const ProfileSet& ps,
                              const TailSpec& tail, double max_spacing) {
    if (!(t > 0.0)) throw DomainError("Z is evaluated for t > 0 only");
    std::vector<double> out(grid.N, 0.0);
    if (tail.c_plus == 0.0 && tail.c_minus == 0.0) return out;
    const double a = ps.params().a;
    const double mu = ps.params().mu;
    const double dx = grid.dx();

    // Refine by a power of two so solver nodes are fine nodes, and enlarge the
    // periodic box until wrap-around is invisible on [-L, L].
    int m = 1;
    while (dx / m > max_spacing) m *= 2;
    const double h = dx / m;
    const double reach = kWindow * std::sqrt(2.0 * mu * t) + std::abs(a) * t;
    int scale = 1;
    while (scale * grid.L < grid.L + 2.0 * reach) scale *= 2;
    const double Lb = scale * grid.L;
    const long nf = static_cast<long>(scale) * grid.N * m;
    if (nf > (1L << 28)) throw PreconditionError("Z grid would exceed 2^28 points; t too large for L");
    const int n = static_cast<int>(nf);

    std::vector<double> w(n, 0.0);
    const double cut = grid.L + reach;
    for (int i = 0; i < n; ++i) {
        const double y = -Lb + i * h;
        if (std::abs(y) <= cut) w[i] = tail_weight(tail, y);
    }
    // Trapezoid convention at the jump of the coefficient.
    w[n / 2] = 0.5 * (tail.c_plus + tail.c_minus);

    Fft fft(n);
    std::vector<cplx> spec(n / 2 + 1), d_spec(n / 2 + 1);
    fft.forward(w, spec);
    for (int k = 0; k <= n / 2; ++k) {
        const double xi = k * std::numbers::pi / Lb;
        const cplx sym = std::exp(cplx(-mu * xi * xi * t, -a * xi * t));
        spec[k] *= sym;
        d_spec[k] = (k == n / 2) ? cplx(0.0) : cplx(0.0, xi) * spec[k];
    }
    std::vector<double> I0(n), I1(n);
    fft.inverse(spec, I0);
    fft.inverse(d_spec, I1);

    const long offset = static_cast<long>(std::lround((Lb - grid.L) / h));
    for (int j = 0; j < grid.N; ++j) {
        const long i = offset + static_cast<long>(j) * m;
        const double x = grid.x(j);
        out[j] = ps.eta(x, t) * I1[i] + ps.eta_x(x, t) * I0[i];
    }
    return out;
}

}  // namespace relaxlab
