#pragma once

namespace relaxlab {

// Flux f(u) = a u + b u^2/2 + c u^3/6 and the constants derived from it.
struct ModelParams {
    double a = 0.0;
    double b = 1.0;
    double c = 0.0;
    double mu = 1.0;     // 1 - a^2
    double kappa = 0.0;  // a b^2 / (4 mu) + c / 6

    // Validates |a| < 1 and b != 0 and fills in mu, kappa.
    static ModelParams make(double a, double b, double c);

    double flux(double u) const { return a * u + 0.5 * b * u * u + c * u * u * u / 6.0; }
    // Nonlinear part g(u) = f(u) - a u.
    double g(double u) const { return 0.5 * b * u * u + c * u * u * u / 6.0; }
};

double kappa_of(double a, double b, double c);

// Algebraic tails of the data and the limits c+- of (1+|x|)^{gamma-1} z0(x).
struct TailSpec {
    double alpha = 1.5;
    double beta = 1.5;
    double gamma = 1.5;  // min(alpha, beta), restricted to (1, 2]
    double c_plus = 0.0;
    double c_minus = 0.0;

    static TailSpec make(double alpha, double beta, double c_plus, double c_minus);
    static TailSpec with_gamma(double gamma, double c_plus, double c_minus) {
        return make(gamma, gamma, c_plus, c_minus);
    }

    bool critical() const { return gamma == 2.0; }
    // Piecewise-constant tail coefficient: c+ on y >= 0, c- on y < 0.
    double coefficient(double y) const { return y >= 0.0 ? c_plus : c_minus; }
};

}  // namespace relaxlab
