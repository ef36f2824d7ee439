#pragma once

#include <complex>
#include <span>

namespace relaxlab {

using cplx = std::complex<double>;

// Thin FFTW wrapper owning aligned workspaces. Plans are built with
// FFTW_ESTIMATE under a process-wide lock so results do not depend on timing.
// An instance must not be shared between threads; separate instances may run
// concurrently.
class Fft {
public:
    explicit Fft(int n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    int size() const { return n_; }

    // Real <-> half spectrum (n/2+1 bins). inverse() includes the 1/n factor.
    void forward(std::span<const double> in, std::span<cplx> out);
    void inverse(std::span<const cplx> in, std::span<double> out);

    // Full complex transforms, in place; inverse includes the 1/n factor.
    void forward_c(std::span<cplx> data);
    void inverse_c(std::span<cplx> data);

private:
    int n_;
    double* rbuf_;
    void* cbuf_;
    void* zbuf_;
    void* r2c_;
    void* c2r_;
    void* c2c_fwd_;
    void* c2c_inv_;
};

}  // namespace relaxlab
