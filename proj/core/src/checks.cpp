#include "relaxlab/checks.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "relaxlab/errors.hpp"
#include "relaxlab/kernels.hpp"
#include "relaxlab/model.hpp"

namespace relaxlab {

namespace {

std::vector<double> quarter_octaves(double t0, double t1) {
    std::vector<double> ts;
    for (int k = 0;; ++k) {
        const double t = t0 * std::exp2(k / 4.0);
        if (t > t1 * (1.0 + 1e-12)) break;
        ts.push_back(t);
    }
    return ts;
}

double sup(std::span<const double> f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

double band(std::span<const double> v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
}

}  // namespace

Verdict kernel_estimate_check(double a) {
    Verdict v;
    v.claim = "LEM21_KERNEL";
    v.anchor = "L^1-L^inf decay of G and of G - G0 applied to a Gaussian";
    v.target = -0.5;
    v.tolerance = 0.05;
    v.t_min = 10.0;
    v.t_max = 1000.0;
    const double mu = 1.0 - a * a;
    const SpectralGrid g = SpectralGrid::make(2048.0, 1 << 14);
    std::vector<double> phi(g.N);
    // Width 4 (the shape of G0 at t = 4): narrower data leave the t^{-3/2}
    // correction visible at t = 10, wider data delay the onset of both rates.
    for (int j = 0; j < g.N; ++j) phi[j] = std::exp(-g.x(j) * g.x(j) / 16.0);
    const auto ts = quarter_octaves(v.t_min, v.t_max);
    std::vector<double> nG, nD;
    for (double t : ts) {
        nG.push_back(sup(apply_G(g, phi, t, KernelKind::G, a, mu)));
        nD.push_back(sup(apply_G(g, phi, t, KernelKind::GminusG0, a, mu)));
    }
    const double sG = loglog_slope(ts, nG);
    const double sD = loglog_slope(ts, nD);
    v.measured = sG;
    v.metric("slope_G", sG);
    v.metric("slope_G_minus_G0", sD);
    v.metric("target_G_minus_G0", -1.0);
    v.metric("tolerance_G_minus_G0", 0.07);
    // Without drift the first correction to the parabolic symbol is even in xi
    // and G - G0 decays like t^{-3/2}; t^{-1} is then only an upper bound.
    const bool sharp = a != 0.0;
    if (!sharp) v.notes.push_back("a = 0: G - G0 rate checked as an upper bound only");
    const bool okD = sharp ? std::abs(sD + 1.0) <= 0.07 : sD <= -1.0 + 0.07;
    const bool ok = std::abs(sG + 0.5) <= 0.05 && okD;
    v.status = ok ? Status::Pass : Status::Fail;
    return v;
}

Verdict moment_check(double gamma, double a) {
    if (!(gamma > 1.0 && gamma <= 2.0)) throw DomainError("gamma outside (1,2]");
    Verdict v;
    v.claim = "LEM24_MOMENT";
    v.anchor = "heat evolution of a zero-mean field with algebraic tail";
    v.t_min = 10.0;
    v.t_max = 1000.0;
    const double mu = 1.0 - a * a;
    const SpectralGrid g = SpectralGrid::make(2048.0, 1 << 14);
    const double s = (gamma - 1.0) / 2.0;

    // phi = p' with p = (1+x^2)^{-s} (1 + A e^{-x^2}). A removes the integral of
    // p - |x|^{-2s}, whose heat evolution would otherwise add a t^{-1} term that
    // masks the t^{-gamma/2} one on desk-scale windows.
    double A = 0.0;
    if (gamma < 2.0) {
        const double I = std::sqrt(std::numbers::pi) * std::tgamma(s - 0.5) / std::tgamma(s);
        auto f = [&](double y) { return std::pow(1.0 + y * y, -s) * std::exp(-y * y); };
        const double J = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            f, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            15, 1e-14);
        A = -I / J;
    }
    v.metric("bump_amplitude", A);
    std::vector<double> phi(g.N);
    for (int j = 0; j < g.N; ++j) {
        const double x = g.x(j);
        const double q = 1.0 + x * x;
        const double e = std::exp(-x * x);
        const double p = std::pow(q, -s) * (1.0 + A * e);
        const double dp = -2.0 * s * x * std::pow(q, -s - 1.0) * (1.0 + A * e) +
                          std::pow(q, -s) * (-2.0 * A * x * e);
        phi[j] = dp * edge_taper(g.x(j), g.L) + p * edge_taper_dx(x, g.L);
    }
    double mean = 0.0;
    for (double x : phi) mean += x;
    mean /= g.N;
    for (double& x : phi) x -= mean;

    const auto ts = quarter_octaves(v.t_min, v.t_max);
    const auto ms = convolve_G0_moment_test(g, phi, ts, a, mu);
    if (gamma < 2.0) {
        v.target = -gamma / 2.0;
        v.tolerance = 0.05;
        v.measured = loglog_slope(ms.times, ms.linf);
        v.status = std::abs(v.measured - v.target) <= v.tolerance ? Status::Pass : Status::Fail;
    } else {
        std::vector<double> scaled(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i)
            scaled[i] = ts[i] / std::log(2.0 + ts[i]) * ms.linf[i];
        v.target = 5.0;
        v.tolerance = 5.0;
        v.measured = band(scaled);
        v.metric("slope", loglog_slope(ms.times, ms.linf));
        v.status = v.measured < v.target ? Status::Pass : Status::Fail;
    }
    return v;
}

Verdict representation_check(const ProfileSet& ps) {
    Verdict v;
    v.claim = "LEM26_REPR";
    v.anchor = "U-operator representation of the linearised auxiliary problem";
    v.target = 0.0;
    v.tolerance = 1e-3;
    v.t_min = 1.0;
    v.t_max = 16.0;
    const SpectralGrid sg = SpectralGrid::make(64.0, 2048);
    std::vector<double> z0(sg.N);
    for (int j = 0; j < sg.N; ++j) {
        const double x = sg.x(j);
        z0[j] = (1.0 + 0.5 * x) * std::exp(-(x - 1.0) * (x - 1.0) / 2.0);
    }
    auto lambda = [&](double tau) {
        std::vector<double> out(sg.N);
        for (int j = 0; j < sg.N; ++j) {
            const double x = sg.x(j);
            out[j] = std::exp(-tau / 4.0) * std::sin(x) * std::exp(-x * x / 8.0);
        }
        return out;
    };
    const std::vector<double> times{1.0, 4.0, 16.0};
    const GridSpec grid = GridSpec::make(sg.L, sg.N, 0.005, 16.0, times);
    const Trajectory cn = solve_auxiliary(z0, lambda, ps, grid);
    double worst = 0.0;
    for (const auto& s : cn.snapshots) {
        const auto z = representation_formula(ps, sg, z0, lambda, s.t);
        double diff = 0.0;
        for (int j = 0; j < sg.N; ++j) diff = std::max(diff, std::abs(z[j] - s.u[j]));
        const double rel = diff / sup(s.u);
        v.metric("rel_discrepancy_t" + std::to_string(static_cast<int>(s.t)), rel);
        worst = std::max(worst, rel);
    }
    v.measured = worst;
    v.status = worst < v.tolerance ? Status::Pass : Status::Fail;
    return v;
}

Verdict ubound_check(const ProfileSet& ps) {
    Verdict v;
    v.claim = "LEM27_UBOUND";
    v.anchor = "decay envelope of the U-operator applied to a derivative";
    v.t_min = 1.0;
    v.t_max = 1024.0;
    v.target = 2.0;
    v.tolerance = 2.0;
    const double a = ps.params().a;
    const double L = 1024.0 + std::abs(a) * v.t_max;
    const SpectralGrid sg = SpectralGrid::make(L, 1 << 14);
    std::vector<double> lam(sg.N);
    double l1 = 0.0;
    for (int j = 0; j < sg.N; ++j) {
        lam[j] = std::exp(-sg.x(j) * sg.x(j));
        l1 += lam[j] * sg.dx();
    }
    // Envelope for lambda in L^1 (p = inf in the dual pairing):
    //   (1+t)^{-1/2} t^{-1/2} + t^{-1}.
    std::vector<double> ts, C;
    for (double t = v.t_min; t <= v.t_max * (1.0 + 1e-12); t *= std::exp2(0.5)) {
        const double n = sup(U_apply_antiderivative(ps, sg, lam, t, 0.0));
        const double env = (1.0 / std::sqrt((1.0 + t) * t) + 1.0 / t) * l1;
        ts.push_back(t);
        C.push_back(n / env);
    }
    const std::size_t h = C.size() / 2;
    const double early = *std::max_element(C.begin(), C.begin() + h);
    const double late = *std::max_element(C.begin() + h, C.end());
    v.measured = late / early;
    v.metric("C_early", early);
    v.metric("C_late", late);
    v.metric("slope_norm", [&] {
        std::vector<double> n(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i)
            n[i] = C[i] * (1.0 / std::sqrt((1.0 + ts[i]) * ts[i]) + 1.0 / ts[i]) * l1;
        return loglog_slope(ts, n);
    }());
    v.status = v.measured <= v.target ? Status::Pass : Status::Fail;
    return v;
}

Verdict burgers_residual_check(const ProfileSet& ps) {
    Verdict v;
    v.claim = "BURGERS_RESID";
    v.anchor = "chi solves the viscous Burgers equation";
    v.target = 3.0;
    v.tolerance = 3.0;
    v.t_min = 1.0;
    v.t_max = 4.0;
    const double L = 40.0 + std::abs(ps.params().a) * 8.0;
    auto worst_residual = [&](int N, double tau) {
        const SpectralGrid g = SpectralGrid::make(L, N);
        double worst = 0.0;
        for (double t0 : {1.0, 2.0, 4.0}) {
            const auto traj = sample_chi(ps, g, {t0 - tau, t0, t0 + tau});
            for (const auto& r : pde_residual(traj, ResidualKind::Burgers))
                worst = std::max(worst, r.max_residual);
        }
        return worst;
    };
    const double coarse = worst_residual(512, 0.1);
    const double fine = worst_residual(1024, 0.05);
    v.measured = coarse / fine;
    v.metric("residual_coarse", coarse);
    v.metric("residual_fine", fine);
    v.status = v.measured >= v.target ? Status::Pass : Status::Fail;
    return v;
}

Verdict linear_exactness_check(double a, double T) {
    Verdict v;
    v.claim = "LINEAR_EXACT";
    v.anchor = "linear damped-wave solve equals the Fourier-multiplier solution";
    v.target = 0.0;
    v.tolerance = 1e-10;
    v.t_min = 0.0;
    v.t_max = T;
    if (!(std::abs(a) < 1.0)) throw DomainError("drift a outside (-1,1)");
    ModelParams p;
    p.a = a;
    p.b = 0.0;
    p.c = 0.0;
    p.mu = 1.0 - a * a;
    p.kappa = 0.0;
    const double L = 8.0 * std::sqrt(T) + T + 40.0;
    const int N = 4096;
    const GridSpec grid = GridSpec::make(L, N, 0.05, T, GridSpec::geometric_times(T, 0.05, 2));
    const SpectralGrid& sg = grid.space;
    InitialData d;
    d.u0.resize(N);
    d.u1.resize(N);
    for (int j = 0; j < N; ++j) {
        const double x = sg.x(j);
        d.u0[j] = std::exp(-x * x / 4.0);
        d.u1[j] = x * std::exp(-x * x / 2.0);
    }
    const Trajectory traj = run_damped_wave(p, d, grid);
    double worst = 0.0;
    for (const auto& s : traj.snapshots) {
        if (s.t == 0.0) continue;
        const auto a0 = apply_G(sg, d.u0, s.t, KernelKind::dtG, a, p.mu);
        const auto a1 = apply_G(sg, d.u0, s.t, KernelKind::G, a, p.mu);
        const auto b1 = apply_G(sg, d.u1, s.t, KernelKind::G, a, p.mu);
        double diff = 0.0, ref = 0.0;
        for (int j = 0; j < N; ++j) {
            const double u = a0[j] + a1[j] + b1[j];
            diff = std::max(diff, std::abs(u - s.u[j]));
            ref = std::max(ref, std::abs(u));
        }
        worst = std::max(worst, diff / ref);
    }
    v.measured = worst;
    v.status = worst < v.tolerance ? Status::Pass : Status::Fail;
    return v;
}

Verdict jinxin_crosscheck(const Trajectory& reference, const SolverOptions& opts) {
    Verdict v;
    v.claim = "JINXIN_XCHECK";
    v.anchor = "relaxation system and damped-wave form give the same u";
    v.target = 0.0;
    v.tolerance = 1e-4;
    v.t_min = reference.snapshots.empty() ? 0.0 : reference.snapshots.front().t;
    v.t_max = reference.snapshots.empty() ? 0.0 : reference.snapshots.back().t;
    const Trajectory jx = run_jinxin(reference.params, reference.data, reference.grid, opts);
    if (jx.snapshots.size() != reference.snapshots.size())
        throw ConsistencyError("trajectories have different snapshot counts");
    double worst = 0.0, worst_t = 0.0;
    for (std::size_t i = 0; i < jx.snapshots.size(); ++i) {
        const auto& a = jx.snapshots[i].u;
        const auto& b = reference.snapshots[i].u;
        double diff = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) diff = std::max(diff, std::abs(a[j] - b[j]));
        const double rel = diff / sup(b);
        if (rel > worst) {
            worst = rel;
            worst_t = jx.snapshots[i].t;
        }
    }
    v.measured = worst;
    v.metric("worst_time", worst_t);
    v.status = worst < v.tolerance ? Status::Pass : Status::Fail;
    return v;
}

Verdict gamma_identity_check(double mu) {
    Verdict v;
    v.claim = "GAMMA_IDENTITY";
    v.anchor = "Gaussian moment integrals in closed form via the Gamma function";
    v.target = 0.0;
    v.tolerance = 1e-8;
    v.t_min = 1.0;
    v.t_max = 10.0;
    double worst = 0.0;
    for (int j : {1, 2})
        for (double g : {1.25, 1.5, 1.75})
            for (double t : {1.0, 10.0})
                worst = std::max(worst, gamma_integral_identity(j, g, mu, t).rel_error);
    v.measured = worst;
    v.status = worst < v.tolerance ? Status::Pass : Status::Fail;
    return v;
}

Campaign::Campaign(ExperimentConfig cfg, SolverOptions opts)
    : cfg_(std::move(cfg)), opts_(opts) {
    cfg_.validate();
    params_ = cfg_.params();
    tail_ = cfg_.tail();
    ps_ = std::make_unique<ProfileSet>(params_, cfg_.mass);
}

const InitialData& Campaign::data() {
    if (!data_)
        data_ = make_calibrated_data(params_, tail_, cfg_.mass, cfg_.epsilon, cfg_.grid().space);
    return *data_;
}

const Trajectory& Campaign::trajectory() {
    if (!traj_) traj_ = run_damped_wave(params_, data(), cfg_.grid(), opts_);
    return *traj_;
}

std::vector<Verdict> Campaign::run(ClaimId id) {
    auto mismatch = [&](const char* why) {
        Verdict v;
        v.claim = to_string(id);
        v.anchor = why;
        v.status = Status::Inconclusive;
        v.notes.push_back(std::string("not applicable: ") + why);
        return std::vector<Verdict>{v};
    };
    auto pick = [&](std::vector<Verdict> all) {
        std::vector<Verdict> out;
        for (auto& v : all)
            if (v.claim == to_string(id)) out.push_back(std::move(v));
        return out;
    };
    switch (id) {
        case ClaimId::THM11_RATE_L1:
        case ClaimId::THM11_RATE_L2:
        case ClaimId::THM11_RATE_LINF:
            return pick(verify_theorem_1_1(trajectory(), *ps_, tail_, analysis));
        case ClaimId::THM12_Z:
            if (tail_.critical()) return mismatch("needs gamma < 2");
            return {verify_theorem_1_2(trajectory(), *ps_, tail_, analysis)};
        case ClaimId::THM12_ZV:
            if (!tail_.critical()) return mismatch("needs gamma = 2");
            return {verify_theorem_1_2(trajectory(), *ps_, tail_, analysis)};
        case ClaimId::COR13_SHARP:
            return verify_corollary_1_3(trajectory(), *ps_, tail_, analysis);
        case ClaimId::LEM21_KERNEL: return {kernel_estimate_check(params_.a)};
        case ClaimId::LEM24_MOMENT: return {moment_check(tail_.gamma, params_.a)};
        case ClaimId::LEM26_REPR: return {representation_check(*ps_)};
        case ClaimId::LEM27_UBOUND: return {ubound_check(*ps_)};
        case ClaimId::PROP51_V: return {verify_prop_5_1(*ps_)};
        case ClaimId::SANDWICH_123:
            if (tail_.critical()) return mismatch("needs gamma < 2");
            return {bound_sandwich(*ps_, tail_)};
        case ClaimId::SANDWICH_124:
            if (!tail_.critical()) return mismatch("needs gamma = 2");
            return {bound_sandwich(*ps_, tail_)};
        case ClaimId::BURGERS_RESID: return {burgers_residual_check(*ps_)};
        case ClaimId::JINXIN_XCHECK: return {jinxin_crosscheck(trajectory(), opts_)};
    }
    throw ConfigError("unhandled claim id");
}

}  // namespace relaxlab
