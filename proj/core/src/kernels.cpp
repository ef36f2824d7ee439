#include "relaxlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relaxlab/errors.hpp"
#include "relaxlab/fft.hpp"

namespace relaxlab {

namespace {

constexpr double kCoincidence = 1e-6;

cplx sinhc(cplx z) {
    if (std::abs(z) < 1e-4) {
        const cplx z2 = z * z;
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sinh(z) / z;
}

double sup_norm(std::span<const double> f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

std::pair<cplx, cplx> lambda12(double xi, double a) {
    const cplx k(xi * xi, a * xi);
    const cplx sq = std::sqrt(1.0 - 4.0 * k);
    // (-1 + sq)/2 rewritten to avoid cancellation for small xi.
    const cplx l1 = -2.0 * k / (1.0 + sq);
    return {l1, -1.0 - l1};
}

cplx G_hat_coincident(double xi, double t, double a) {
    const auto [l1, l2] = lambda12(xi, a);
    const cplx z = 0.5 * (l1 - l2) * t;
    return std::exp(-0.5 * t) * t * sinhc(z);
}

cplx dtG_hat_coincident(double xi, double t, double a) {
    const auto [l1, l2] = lambda12(xi, a);
    const cplx z = 0.5 * (l1 - l2) * t;
    return std::exp(-0.5 * t) * (std::cosh(z) - 0.5 * t * sinhc(z));
}

cplx G_hat(double xi, double t, double a) {
    if (t == 0.0) return 0.0;
    const auto [l1, l2] = lambda12(xi, a);
    const cplx delta = l1 - l2;
    if (std::abs(delta) < kCoincidence) return G_hat_coincident(xi, t, a);
    return (std::exp(l1 * t) - std::exp(l2 * t)) / delta;
}

cplx dtG_hat(double xi, double t, double a) {
    if (t == 0.0) return 1.0;
    const auto [l1, l2] = lambda12(xi, a);
    const cplx delta = l1 - l2;
    if (std::abs(delta) < kCoincidence) return dtG_hat_coincident(xi, t, a);
    return (l1 * std::exp(l1 * t) - l2 * std::exp(l2 * t)) / delta;
}

cplx kernel_symbol(KernelKind kind, double xi, double t, double a, double mu, int dx_order) {
    cplx v;
    switch (kind) {
        case KernelKind::G: v = G_hat(xi, t, a); break;
        case KernelKind::dtG: v = dtG_hat(xi, t, a); break;
        case KernelKind::G0: v = std::exp(cplx(-mu * xi * xi * t, -a * xi * t)); break;
        case KernelKind::GminusG0:
            v = G_hat(xi, t, a) - std::exp(cplx(-mu * xi * xi * t, -a * xi * t));
            break;
    }
    for (int l = 0; l < dx_order; ++l) v *= cplx(0.0, xi);
    return v;
}

std::vector<cplx> multiplier(const SpectralGrid& grid, KernelKind kind, double t, double a,
                             double mu, int dx_order) {
    if (t < 0.0) throw DomainError("kernel time must be non-negative");
    if ((kind == KernelKind::G0 || kind == KernelKind::GminusG0) && !(t > 0.0))
        throw DomainError("heat-kernel symbols need t > 0");
    std::vector<cplx> m(grid.N);
    for (int k = 0; k < grid.N; ++k) m[k] = kernel_symbol(kind, grid.xi(k), t, a, mu, dx_order);
    // The Nyquist bin has no conjugate partner; keep only its real part.
    m[grid.N / 2] = cplx(m[grid.N / 2].real(), 0.0);
    return m;
}

std::vector<double> apply_G(const SpectralGrid& grid, std::span<const double> phi, double t,
                            KernelKind kind, double a, double mu, int dx_order) {
    if (static_cast<int>(phi.size()) != grid.N) throw ConsistencyError("field size != grid size");
    const auto m = multiplier(grid, kind, t, a, mu, dx_order);
    std::vector<cplx> z(phi.begin(), phi.end());
    Fft fft(grid.N);
    fft.forward_c(z);
    for (int k = 0; k < grid.N; ++k) z[k] *= m[k];
    fft.inverse_c(z);
    std::vector<double> out(grid.N);
    double resid = 0.0;
    for (int j = 0; j < grid.N; ++j) {
        out[j] = z[j].real();
        resid = std::max(resid, std::abs(z[j].imag()));
    }
    const double ref = std::max(sup_norm(phi), sup_norm(out));
    if (resid > 1e-12 * ref)
        throw AliasingError("imaginary residue after multiplier exceeds 1e-12 of field norm");
    return out;
}

MomentSeries convolve_G0_moment_test(const SpectralGrid& grid, std::span<const double> phi,
                                     std::span<const double> times, double a, double mu) {
    if (static_cast<int>(phi.size()) != grid.N) throw ConsistencyError("field size != grid size");
    const double dx = grid.dx();
    double mean = 0.0, l1 = 0.0;
    for (double v : phi) {
        mean += v * dx;
        l1 += std::abs(v) * dx;
    }
    if (std::abs(mean) > 1e-10 * l1)
        throw PreconditionError("moment test needs a zero-mean field");

    Fft fft(grid.N);
    std::vector<cplx> base(grid.half_size()), work(grid.half_size());
    fft.forward(phi, base);
    std::vector<double> out(grid.N);
    MomentSeries s;
    for (double t : times) {
        if (!(t > 0.0)) throw DomainError("moment test times must be positive");
        for (int k = 0; k < grid.half_size(); ++k) {
            const double xi = grid.xi_half(k);
            work[k] = base[k] * std::exp(cplx(-mu * xi * xi * t, -a * xi * t));
        }
        fft.inverse(work, out);
        double n1 = 0.0;
        for (double v : out) n1 += std::abs(v) * dx;
        s.times.push_back(t);
        s.linf.push_back(sup_norm(out));
        s.l1.push_back(n1);
    }
    return s;
}

std::vector<double> cumulative_trapezoid(std::span<const double> f, double dx) {
    std::vector<double> H(f.size(), 0.0);
    for (std::size_t j = 1; j < f.size(); ++j) H[j] = H[j - 1] + 0.5 * dx * (f[j - 1] + f[j]);
    return H;
}

std::vector<double> U_apply_antiderivative(const ProfileSet& ps, const SpectralGrid& grid,
                                           std::span<const double> H, double t, double tau) {
    if (!(t > tau) || tau < 0.0) throw DomainError("U-operator needs t > tau >= 0");
    if (static_cast<int>(H.size()) != grid.N) throw ConsistencyError("field size != grid size");
    const int N = grid.N;
    const double a = ps.params().a;
    const double mu = ps.params().mu;
    const double s = t - tau;

    std::vector<double> F(N);
    for (int j = 0; j < N; ++j) F[j] = H[j] / ps.eta(grid.x(j), tau);

    // Split off F_end * S(y), S a wide erf step, so the remainder is periodic.
    const double F_end = F[N - 1];
    const double w = grid.L / 8.0;
    const double spread = std::sqrt(w * w + 4.0 * mu * s);
    std::vector<double> R(N);
    for (int j = 0; j < N; ++j) R[j] = F[j] - F_end * 0.5 * (1.0 + std::erf(grid.x(j) / w));

    Fft fft(N);
    std::vector<cplx> spec(grid.half_size()), dspec(grid.half_size());
    fft.forward(R, spec);
    for (int k = 0; k < grid.half_size(); ++k) {
        const double xi = grid.xi_half(k);
        spec[k] *= std::exp(cplx(-mu * xi * xi * s, -a * xi * s));
        dspec[k] = (k == N / 2) ? cplx(0.0) : cplx(0.0, xi) * spec[k];
    }
    std::vector<double> I0(N), I1(N);
    fft.inverse(spec, I0);
    fft.inverse(dspec, I1);

    std::vector<double> U(N);
    for (int j = 0; j < N; ++j) {
        const double x = grid.x(j);
        const double z = (x - a * s) / spread;
        const double i0 = I0[j] + F_end * 0.5 * (1.0 + std::erf(z));
        const double i1 =
            I1[j] + F_end * std::exp(-z * z) / (std::sqrt(std::numbers::pi) * spread);
        U[j] = ps.eta(x, t) * i1 + ps.eta_x(x, t) * i0;
    }
    return U;
}

std::vector<double> U_apply(const ProfileSet& ps, const SpectralGrid& grid,
                            std::span<const double> h, double t, double tau) {
    if (static_cast<int>(h.size()) != grid.N) throw ConsistencyError("field size != grid size");
    return U_apply_antiderivative(ps, grid, cumulative_trapezoid(h, grid.dx()), t, tau);
}

}  // namespace relaxlab
