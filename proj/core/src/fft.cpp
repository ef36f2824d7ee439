#include "relaxlab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

#include "relaxlab/errors.hpp"

namespace relaxlab {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

Fft::Fft(int n)
    : n_(n), rbuf_(nullptr), cbuf_(nullptr), zbuf_(nullptr),
      r2c_(nullptr), c2r_(nullptr), c2c_fwd_(nullptr), c2c_inv_(nullptr) {
    if (n < 2) throw DomainError("FFT size must be at least 2");
    rbuf_ = fftw_alloc_real(n);
    cbuf_ = fftw_alloc_complex(n / 2 + 1);
    zbuf_ = fftw_alloc_complex(n);
    if (!rbuf_ || !cbuf_ || !zbuf_) throw NumericalError("FFT workspace allocation failed");
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    for (void* p : {r2c_, c2r_, c2c_fwd_, c2c_inv_})
        if (p) fftw_destroy_plan(static_cast<fftw_plan>(p));
    fftw_free(rbuf_);
    fftw_free(cbuf_);
    fftw_free(zbuf_);
}

void Fft::forward(std::span<const double> in, std::span<cplx> out) {
    if (static_cast<int>(in.size()) != n_ || static_cast<int>(out.size()) != n_ / 2 + 1)
        throw ConsistencyError("FFT forward: size mismatch");
    auto* c = static_cast<fftw_complex*>(cbuf_);
    if (!r2c_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        r2c_ = fftw_plan_dft_r2c_1d(n_, rbuf_, c, FFTW_ESTIMATE);
    }
    std::copy(in.begin(), in.end(), rbuf_);
    fftw_execute(static_cast<fftw_plan>(r2c_));
    std::memcpy(static_cast<void*>(out.data()), c, sizeof(fftw_complex) * (n_ / 2 + 1));
}

void Fft::inverse(std::span<const cplx> in, std::span<double> out) {
    if (static_cast<int>(out.size()) != n_ || static_cast<int>(in.size()) != n_ / 2 + 1)
        throw ConsistencyError("FFT inverse: size mismatch");
    auto* c = static_cast<fftw_complex*>(cbuf_);
    if (!c2r_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        c2r_ = fftw_plan_dft_c2r_1d(n_, c, rbuf_, FFTW_ESTIMATE);
    }
    std::memcpy(c, in.data(), sizeof(fftw_complex) * (n_ / 2 + 1));
    fftw_execute(static_cast<fftw_plan>(c2r_));
    const double s = 1.0 / n_;
    for (int j = 0; j < n_; ++j) out[j] = rbuf_[j] * s;
}

void Fft::forward_c(std::span<cplx> data) {
    if (static_cast<int>(data.size()) != n_) throw ConsistencyError("FFT forward_c: size mismatch");
    auto* z = static_cast<fftw_complex*>(zbuf_);
    if (!c2c_fwd_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        c2c_fwd_ = fftw_plan_dft_1d(n_, z, z, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    std::memcpy(z, data.data(), sizeof(fftw_complex) * n_);
    fftw_execute(static_cast<fftw_plan>(c2c_fwd_));
    std::memcpy(static_cast<void*>(data.data()), z, sizeof(fftw_complex) * n_);
}

void Fft::inverse_c(std::span<cplx> data) {
    if (static_cast<int>(data.size()) != n_) throw ConsistencyError("FFT inverse_c: size mismatch");
    auto* z = static_cast<fftw_complex*>(zbuf_);
    if (!c2c_inv_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        c2c_inv_ = fftw_plan_dft_1d(n_, z, z, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    std::memcpy(z, data.data(), sizeof(fftw_complex) * n_);
    fftw_execute(static_cast<fftw_plan>(c2c_inv_));
    const double s = 1.0 / n_;
    for (int j = 0; j < n_; ++j) data[j] = cplx(z[j][0] * s, z[j][1] * s);
}

}  // namespace relaxlab
