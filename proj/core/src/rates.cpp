#include "relaxlab/rates.hpp"

#include <algorithm>
#include <cmath>

#include "relaxlab/errors.hpp"

namespace relaxlab {

const std::vector<double>& select(const NormSeries& s, NormKind k) {
    switch (k) {
        case NormKind::L1: return s.l1;
        case NormKind::L2: return s.l2;
        case NormKind::Linf: break;
    }
    return s.linf;
}

const char* to_string(NormKind k) {
    switch (k) {
        case NormKind::L1: return "l1";
        case NormKind::L2: return "l2";
        case NormKind::Linf: break;
    }
    return "linf";
}

FieldNorms field_norms(std::span<const double> f, double dx) {
    FieldNorms n;
    for (double v : f) {
        const double a = std::abs(v);
        n.l1 += a;
        n.l2 += a * a;
        n.linf = std::max(n.linf, a);
    }
    n.l1 *= dx;
    n.l2 = std::sqrt(n.l2 * dx);
    return n;
}

namespace {

struct Line {
    double intercept = 0.0, slope = 0.0, rms = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Line l;
    l.slope = sxx > 0 ? sxy / sxx : 0.0;
    l.intercept = my - l.slope * mx;
    double r2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - l.intercept - l.slope * x[i];
        r2 += r * r;
    }
    l.rms = std::sqrt(r2 / n);
    return l;
}

}  // namespace

double loglog_slope(std::span<const double> times, std::span<const double> values) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] > 0 && values[i] > 0) {
            x.push_back(std::log(times[i]));
            y.push_back(std::log(values[i]));
        }
    }
    if (x.size() < 2) throw PreconditionError("slope needs two positive samples");
    return least_squares(x, y).slope;
}

RateFit fit_rate(std::span<const double> times, std::span<const double> values, double t_min,
                 double t_max, FitOptions opts) {
    if (times.size() != values.size()) throw ConsistencyError("times/values length mismatch");
    RateFit f;
    std::vector<double> t, e;
    int dropped = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_min || times[i] > t_max) continue;
        if (!(values[i] > 0.0) || !std::isfinite(values[i]) || !(times[i] > 0.0)) {
            ++dropped;
            continue;
        }
        t.push_back(times[i]);
        e.push_back(values[i]);
    }
    if (dropped > 0)
        f.warnings.push_back(std::to_string(dropped) + " non-positive samples dropped from fit");
    if (static_cast<int>(t.size()) < opts.min_samples)
        throw PreconditionError("rate fit needs at least " + std::to_string(opts.min_samples) +
                                " samples in window, got " + std::to_string(t.size()));
    const double decades = std::log10(t.back() / t.front());
    if (decades < opts.min_decades - 1e-12)
        throw PreconditionError("rate fit window spans only " + std::to_string(decades) +
                                " decades");

    std::vector<double> lt(t.size()), le(t.size()), le_log(t.size());
    bool log_ok = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
        lt[i] = std::log(t[i]);
        le[i] = std::log(e[i]);
        if (lt[i] <= 0.0) log_ok = false;
        le_log[i] = log_ok ? le[i] - std::log(lt[i]) : 0.0;
    }
    const Line power = least_squares(lt, le);
    f.exponent_power = power.slope;
    f.residual_power = power.rms;
    f.exponent = power.slope;
    f.C_hat = std::exp(power.intercept);
    f.residual = power.rms;
    if (log_ok) {
        const Line lg = least_squares(lt, le_log);
        f.exponent_log = lg.slope;
        f.residual_log = lg.rms;
        if (lg.rms < (1.0 - opts.log_improvement) * power.rms) {
            f.log_flag = true;
            f.exponent = lg.slope;
            f.C_hat = std::exp(lg.intercept);
            f.residual = lg.rms;
        }
    } else {
        f.warnings.push_back("log-corrected model skipped: window reaches t <= 1");
    }
    f.t_min = t.front();
    f.t_max = t.back();
    f.samples = static_cast<int>(t.size());

    // Consecutive dyadic intervals starting at the window's first sample.
    std::size_t i = 0;
    while (i + 1 < t.size()) {
        std::size_t j = i + 1;
        while (j + 1 < t.size() && t[j] < 2.0 * t[i] * (1.0 - 1e-9)) ++j;
        f.local_slopes.push_back({t[i], t[j], (le[j] - le[i]) / (lt[j] - lt[i])});
        i = j;
    }
    return f;
}

RateFit fit_rate(const NormSeries& s, NormKind k, double t_min, double t_max, FitOptions opts) {
    return fit_rate(s.times, select(s, k), t_min, t_max, opts);
}

}  // namespace relaxlab
