#pragma once

#include <span>
#include <string>
#include <vector>

namespace relaxlab {

struct NormSeries {
    std::vector<double> times;
    std::vector<double> l1;
    std::vector<double> l2;
    std::vector<double> linf;

    void push(double t, double n1, double n2, double ninf) {
        times.push_back(t);
        l1.push_back(n1);
        l2.push_back(n2);
        linf.push_back(ninf);
    }
    std::size_t size() const { return times.size(); }
};

enum class NormKind { L1, L2, Linf };

const std::vector<double>& select(const NormSeries& s, NormKind k);
const char* to_string(NormKind k);

// Trapezoid L1, L2 and max norm of a periodic grid field.
struct FieldNorms {
    double l1 = 0.0, l2 = 0.0, linf = 0.0;
};
FieldNorms field_norms(std::span<const double> f, double dx);

struct LocalSlope {
    double t0 = 0.0, t1 = 0.0, slope = 0.0;
};

struct RateFit {
    double exponent = 0.0;  // of the selected model
    bool log_flag = false;
    double C_hat = 0.0;
    double t_min = 0.0, t_max = 0.0;
    double residual = 0.0;  // RMS of the selected model in log space
    double exponent_power = 0.0, residual_power = 0.0;
    double exponent_log = 0.0, residual_log = 0.0;
    int samples = 0;
    std::vector<LocalSlope> local_slopes;
    std::vector<std::string> warnings;
};

struct FitOptions {
    int min_samples = 8;
    double min_decades = 1.5;
    // The log-corrected model E = C t^p log t wins only if it lowers the RMS
    // residual by at least this fraction.
    double log_improvement = 0.10;
};

// Least squares of log E on log t over [t_min, t_max]. Non-positive samples are
// dropped with a warning; too few samples or too short a span is a PreconditionError.
RateFit fit_rate(std::span<const double> times, std::span<const double> values, double t_min,
                 double t_max, FitOptions opts = {});
RateFit fit_rate(const NormSeries& s, NormKind k, double t_min, double t_max,
                 FitOptions opts = {});

// Slope of log E against log t by plain least squares (no model selection, no
// sample-count precondition beyond two points).
double loglog_slope(std::span<const double> times, std::span<const double> values);

}  // namespace relaxlab
