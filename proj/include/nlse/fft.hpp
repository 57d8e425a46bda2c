#pragma once

#include <complex>
#include <vector>

namespace nlse {

/// Thin RAII wrapper around an FFTW complex-to-complex plan pair of fixed
/// size. Unnormalized transforms in FFTW's native frequency layout
/// (index k holds mode k for k < M/2, mode k-M otherwise).
///
/// Plan creation is serialized internally (FFTW planning is not
/// thread-safe); executing distinct Fft instances concurrently is fine.
class Fft {
  public:
    explicit Fft(int size);
    ~Fft();
    Fft(Fft&&) noexcept;
    Fft& operator=(Fft&&) noexcept;
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    int size() const { return size_; }

    /// out_k = sum_j in_j exp(-2*pi*i*j*k/M). in == out allowed.
    void forward(const std::complex<double>* in, std::complex<double>* out);
    /// out_j = sum_k in_k exp(+2*pi*i*j*k/M). in == out allowed.
    void backward(const std::complex<double>* in, std::complex<double>* out);

  private:
    int size_ = 0;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    std::complex<double>* buf_ = nullptr;  // fftw-aligned
};

/// Reorders between canonical (l = -M/2..M/2-1 at index l+M/2) and FFT-native
/// layout. The map is its own inverse: dst[i] = src[(i + M/2) % M].
void shift_half(const std::complex<double>* src, std::complex<double>* dst, int m);

}  // namespace nlse
