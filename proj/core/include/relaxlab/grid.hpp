#pragma once

#include <vector>

namespace relaxlab {

// Periodic grid on [-L, L) with N nodes; node j sits at x_j = -L + j dx.
struct SpectralGrid {
    double L = 0.0;
    int N = 0;

    static SpectralGrid make(double L, int N);

    double dx() const { return 2.0 * L / N; }
    double x(int j) const { return -L + j * dx(); }
    std::vector<double> nodes() const;

    // Wavenumber of FFT bin k in standard ordering (0..N/2, then negatives).
    double xi(int k) const;
    // Wavenumber of half-spectrum bin k = 0..N/2.
    double xi_half(int k) const;
    int half_size() const { return N / 2 + 1; }
};

bool is_power_of_two(long n);

}  // namespace relaxlab
