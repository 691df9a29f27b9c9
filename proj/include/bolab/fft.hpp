#ifndef BOLAB_FFT_HPP
#define BOLAB_FFT_HPP

#include <complex>
#include <vector>

namespace bolab {

using cplx = std::complex<double>;

/// Complex FFT of a fixed power-of-two size. Plans are created once
/// (creation is serialized internally; FFTW planning is not thread-safe)
/// and may be executed concurrently on distinct buffers.
class Fft {
  public:
    explicit Fft(int n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    int size() const { return n_; }

    /// out[k] = sum_j in[j] e^{-2pi i jk/n}  (no normalization)
    void forward(const cplx* in, cplx* out) const;
    /// out[j] = (1/n) sum_k in[k] e^{+2pi i jk/n}
    void inverse(const cplx* in, cplx* out) const;

    std::vector<cplx> forward(const std::vector<cplx>& in) const;
    std::vector<cplx> inverse(const std::vector<cplx>& in) const;

  private:
    int n_;
    void* fwd_;
    void* bwd_;
};

} // namespace bolab

#endif
