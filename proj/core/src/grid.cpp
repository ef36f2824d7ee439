#include "relaxlab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "relaxlab/errors.hpp"

namespace relaxlab {

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

SpectralGrid SpectralGrid::make(double L, int N) {
    if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("grid half-width must be positive");
    if (N < 4 || !is_power_of_two(N))
        throw DomainError("grid size must be a power of two >= 4, got " + std::to_string(N));
    return SpectralGrid{L, N};
}

std::vector<double> SpectralGrid::nodes() const {
    std::vector<double> out(N);
    for (int j = 0; j < N; ++j) out[j] = x(j);
    return out;
}

double SpectralGrid::xi(int k) const {
    const int m = k <= N / 2 ? k : k - N;
    return m * std::numbers::pi / L;
}

double SpectralGrid::xi_half(int k) const { return k * std::numbers::pi / L; }

}  // namespace relaxlab
