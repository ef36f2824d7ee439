#include "relaxlab/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relaxlab/errors.hpp"

namespace relaxlab {

double kappa_of(double a, double b, double c) {
    const double mu = 1.0 - a * a;
    return a * b * b / (4.0 * mu) + c / 6.0;
}

ModelParams ModelParams::make(double a, double b, double c) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw DomainError("flux coefficients must be finite");
    if (!(std::abs(a) < 1.0)) {
        std::ostringstream os;
        os << "drift a=" << a << " outside (-1,1)";
        throw DomainError(os.str());
    }
    if (b == 0.0) throw DomainError("quadratic coefficient b must be nonzero");
    ModelParams p;
    p.a = a;
    p.b = b;
    p.c = c;
    p.mu = 1.0 - a * a;
    p.kappa = kappa_of(a, b, c);
    return p;
}

TailSpec TailSpec::make(double alpha, double beta, double c_plus, double c_minus) {
    if (!std::isfinite(c_plus) || !std::isfinite(c_minus))
        throw DomainError("tail constants must be finite");
    if (!(alpha > 1.0) || !(beta > 1.0)) throw DomainError("decay exponents must exceed 1");
    const double g = std::min(alpha, beta);
    if (!(g > 1.0 && g <= 2.0)) {
        std::ostringstream os;
        os << "gamma outside (1,2]: gamma=" << g;
        throw DomainError(os.str());
    }
    TailSpec t;
    t.alpha = alpha;
    t.beta = beta;
    t.gamma = g;
    t.c_plus = c_plus;
    t.c_minus = c_minus;
    return t;
}

}  // namespace relaxlab
