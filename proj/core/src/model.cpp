#include "relaxlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <limits>

#include "relaxlab/errors.hpp"
#include "relaxlab/fft.hpp"
#include "relaxlab/kernels.hpp"

namespace relaxlab {

namespace {

// exp(-1/s) for s > 0, else 0, and its derivative.
double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
double bump_d(double s) { return s > 0.0 ? std::exp(-1.0 / s) / (s * s) : 0.0; }

// C-infinity step: 0 for u <= 0, 1 for u >= 1.
double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double p = bump(u), q = bump(1.0 - u);
    return p / (p + q);
}

double smooth_step_d(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double p = bump(u), q = bump(1.0 - u);
    const double dp = bump_d(u), dq = -bump_d(1.0 - u);
    return (dp * q - p * dq) / ((p + q) * (p + q));
}

// Smoothed |x|: x tanh x is analytic, so the trapezoid rule integrates its
// derivative to rounding, and it equals |x| to machine precision for |x| > 20.
double smooth_abs(double x) { return x * std::tanh(x); }

double smooth_abs_dx(double x) {
    const double th = std::tanh(x);
    return th + x * (1.0 - th * th);
}

double lp_norm(std::span<const double> f, double dx, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (double v : f) s += std::pow(std::abs(v), p);
    return std::pow(s * dx, 1.0 / p);
}

// Sum over j = 0..order of |d^j f|_p, derivatives by FFT.
double sobolev_norm(std::span<const double> f, const SpectralGrid& grid, int order, double p) {
    double total = lp_norm(f, grid.dx(), p);
    if (order <= 0) return total;
    Fft fft(grid.N);
    std::vector<cplx> base(grid.half_size()), work(grid.half_size());
    std::vector<double> deriv(grid.N);
    fft.forward(f, base);
    for (int j = 1; j <= order; ++j) {
        for (int k = 0; k < grid.half_size(); ++k) {
            cplx m = std::pow(cplx(0.0, grid.xi_half(k)), j);
            if (k == grid.N / 2 && (j % 2 == 1)) m = 0.0;
            work[k] = base[k] * m;
        }
        fft.inverse(work, deriv);
        total += lp_norm(deriv, grid.dx(), p);
    }
    return total;
}

void check_finite(std::span<const double> f, const char* what) {
    for (double v : f)
        if (!std::isfinite(v)) throw DataError(std::string("non-finite sample in ") + what);
}

}  // namespace

double edge_taper(double x, double L) {
    return 1.0 - smooth_step((std::abs(x) - 0.8 * L) / (0.1 * L));
}

double edge_taper_dx(double x, double L) {
    const double d = -smooth_step_d((std::abs(x) - 0.8 * L) / (0.1 * L)) / (0.1 * L);
    return x < 0.0 ? -d : d;
}

InitialData make_calibrated_data(const ModelParams& params, const TailSpec& tail, double M,
                                 double epsilon, const SpectralGrid& grid) {
    const double g = tail.gamma;
    if (!(g > 1.0 && g <= 2.0)) throw DomainError("gamma outside (1,2]");
    const bool flat = tail.c_plus == 0.0 && tail.c_minus == 0.0;
    if (!flat && !(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    // The tail window must clear both the tanh switch and the transition of eta.
    if (!flat && 0.6 * grid.L < 20.0 + std::abs(params.a) + 12.0 * std::sqrt(params.mu))
        throw CalibrationError("grid too narrow: tail constants would not be observable");

    const ProfileSet ps(params, M);
    const double cp = flat ? 0.0 : tail.c_plus * std::exp(ps.K()) / epsilon;
    const double cm = flat ? 0.0 : tail.c_minus / epsilon;

    InitialData d;
    d.u0.resize(grid.N);
    d.u1.assign(grid.N, 0.0);
    d.epsilon = epsilon;
    for (int j = 0; j < grid.N; ++j) {
        const double x = grid.x(j);
        double w = 0.0;
        if (!flat) {
            const double th = std::tanh(x);
            const double sig = 0.5 * (1.0 + th);
            const double A = sig * cp + (1.0 - sig) * cm;
            const double dA = 0.5 * (1.0 - th * th) * (cp - cm);
            const double q = 1.0 + smooth_abs(x);
            const double B = std::pow(q, 1.0 - g);
            const double dB = (1.0 - g) * std::pow(q, -g) * smooth_abs_dx(x);
            const double tp = edge_taper(x, grid.L);
            const double dtp = edge_taper_dx(x, grid.L);
            w = dA * B * tp + A * dB * tp + A * B * dtp;
        }
        d.u0[j] = ps.chi(x, 0.0) + epsilon * w;
    }
    d.mass = mass(d, grid);
    if (std::abs(d.mass - M) > 1e-6 * std::max(std::abs(M), 1e-3))
        throw CalibrationError("grid too coarse: sampled mass " + std::to_string(d.mass) +
                               " differs from M; increase N");
    return d;
}

double mass(const InitialData& data, const SpectralGrid& grid) {
    if (static_cast<int>(data.u0.size()) != grid.N || static_cast<int>(data.u1.size()) != grid.N)
        throw ConsistencyError("initial data size != grid size");
    check_finite(data.u0, "u0");
    check_finite(data.u1, "u1");
    // Periodic trapezoid rule.
    double s = 0.0;
    for (int j = 0; j < grid.N; ++j) s += data.u0[j] + data.u1[j];
    return s * grid.dx();
}

double smallness(const InitialData& data, const SpectralGrid& grid, int s, double p) {
    if (s < 1) throw DomainError("smallness needs s >= 1");
    if (!(p >= 1.0)) throw DomainError("smallness needs p >= 1");
    check_finite(data.u0, "u0");
    check_finite(data.u1, "u1");
    const double dx = grid.dx();
    return sobolev_norm(data.u0, grid, s, p) + lp_norm(data.u0, dx, 1.0) +
           sobolev_norm(data.u1, grid, s - 1, p) + lp_norm(data.u1, dx, 1.0);
}

std::vector<double> z0_profile(const InitialData& data, const ProfileSet& ps,
                               const SpectralGrid& grid) {
    const double M = ps.mass();
    if (std::abs(data.mass - M) > 1e-8 * std::max(std::abs(M), 1e-3))
        throw ConsistencyError("data mass does not match the profile mass");
    std::vector<double> f(grid.N);
    for (int j = 0; j < grid.N; ++j)
        f[j] = data.u0[j] + data.u1[j] - ps.chi(grid.x(j), 0.0);
    auto z = cumulative_trapezoid(f, grid.dx());
    for (int j = 0; j < grid.N; ++j) z[j] /= ps.eta(grid.x(j), 0.0);
    return z;
}

TailEstimate tail_limits(std::span<const double> z0, double gamma, const SpectralGrid& grid,
                         TailWindow window) {
    if (static_cast<int>(z0.size()) != grid.N) throw ConsistencyError("field size != grid size");
    struct Side {
        double mean = 0.0, sd = 0.0;
        int n = 0;
    };
    auto side = [&](int sign) {
        Side s;
        double sum = 0.0, sum2 = 0.0;
        for (int j = 0; j < grid.N; ++j) {
            const double x = grid.x(j) * sign;
            if (x < window.inner * grid.L || x > window.outer * grid.L) continue;
            const double v = std::pow(1.0 + x, gamma - 1.0) * z0[j];
            sum += v;
            sum2 += v * v;
            ++s.n;
        }
        if (s.n == 0) throw PreconditionError("tail window contains no grid points");
        s.mean = sum / s.n;
        s.sd = std::sqrt(std::max(0.0, sum2 / s.n - s.mean * s.mean));
        return s;
    };
    const Side plus = side(+1), minus = side(-1);
    const double scale = std::max({std::abs(plus.mean), std::abs(minus.mean),
                                   std::numeric_limits<double>::min()});
    auto rsd = [](const Side& s) {
        return s.mean != 0.0 ? s.sd / std::abs(s.mean) : (s.sd == 0.0 ? 0.0 : INFINITY);
    };
    auto flat = [&](const Side& s) { return s.sd <= 0.02 * std::abs(s.mean) + 1e-10 * scale; };

    TailEstimate e;
    e.c_plus = plus.mean;
    e.c_minus = minus.mean;
    e.rsd_plus = rsd(plus);
    e.rsd_minus = rsd(minus);
    e.conclusive = flat(plus) && flat(minus);
    return e;
}

double decay_certificate(const InitialData& data, const ProfileSet& ps, double gamma,
                         const SpectralGrid& grid) {
    double m = 0.0;
    for (int j = 0; j < grid.N; ++j) {
        const double x = grid.x(j);
        m = std::max(m, std::abs(data.u0[j] - ps.chi(x, 0.0)) * std::pow(1.0 + std::abs(x), gamma));
    }
    return m;
}

}  // namespace relaxlab
