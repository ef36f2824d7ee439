#include <boost/math/quadrature/gauss.hpp>

#include "relaxlab/errors.hpp"
#include "relaxlab/kernels.hpp"

namespace relaxlab {

std::vector<double> representation_formula(
    const ProfileSet& ps, const SpectralGrid& grid, std::span<const double> z0,
    const std::function<std::vector<double>(double)>& lambda, double t, int panels) {
    if (!(t > 0.0)) throw DomainError("representation formula needs t > 0");
    if (panels < 1) throw DomainError("panel count must be positive");
    std::vector<double> z = U_apply(ps, grid, z0, t, 0.0);

    // The tau-integrand tends to d/dx(eta(t) eta(tau)^{-1} lambda(tau)) as tau -> t and is
    // smooth on [0, t], so plain Gauss-Legendre panels suffice.
    using GL = boost::math::quadrature::gauss<double, 8>;
    const auto& nodes = GL::abscissa();
    const auto& weights = GL::weights();
    const double h = t / panels;
    auto accumulate = [&](double tau, double wt) {
        const auto lam = lambda(tau);
        if (static_cast<int>(lam.size()) != grid.N)
            throw ConsistencyError("forcing field size != grid size");
        const auto u = U_apply_antiderivative(ps, grid, lam, t, tau);
        for (int j = 0; j < grid.N; ++j) z[j] += wt * u[j];
    };
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double off = 0.5 * h * nodes[i];
            const double wt = 0.5 * h * weights[i];
            if (nodes[i] == 0.0) {
                accumulate(mid, wt);
            } else {
                accumulate(mid - off, wt);
                accumulate(mid + off, wt);
            }
        }
    }
    return z;
}

}  // namespace relaxlab
