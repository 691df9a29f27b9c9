#include "bolab/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace bolab {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

Fft::Fft(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("Fft: size too small");
    std::lock_guard<std::mutex> lock(planner_mutex());
    // UNALIGNED so the plan can be executed on arbitrary caller buffers.
    fftw_complex* buf = fftw_alloc_complex(n_);
    fwd_ = fftw_plan_dft_1d(n_, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd_ = fftw_plan_dft_1d(n_, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!fwd_ || !bwd_) throw std::runtime_error("Fft: planning failed");
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void Fft::forward(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(fwd_),
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void Fft::inverse(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(bwd_),
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
    const double s = 1.0 / n_;
    for (int j = 0; j < n_; ++j) out[j] *= s;
}

std::vector<cplx> Fft::forward(const std::vector<cplx>& in) const {
    std::vector<cplx> out(n_);
    forward(in.data(), out.data());
    return out;
}

std::vector<cplx> Fft::inverse(const std::vector<cplx>& in) const {
    std::vector<cplx> out(n_);
    inverse(in.data(), out.data());
    return out;
}

} // namespace bolab
