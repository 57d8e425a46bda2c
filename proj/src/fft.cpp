#include "nlse/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <new>
#include <utility>

#include "nlse/errors.hpp"

namespace nlse {

namespace {
// FFTW planning mutates global planner state; execution does not.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Fft::Fft(int size) : size_(size) {
    if (size < 1) throw InvalidInputError("Fft: size must be positive");
    buf_ = static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * size));
    if (!buf_) throw std::bad_alloc();
    auto* b = reinterpret_cast<fftw_complex*>(buf_);
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW_ESTIMATE keeps planning deterministic and leaves buf_ untouched.
    plan_fwd_ = fftw_plan_dft_1d(size, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_1d(size, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_fwd_ || !plan_bwd_) {
        if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
        if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
        fftw_free(buf_);
        throw std::runtime_error("Fft: plan creation failed");
    }
}

Fft::~Fft() {
    if (buf_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
        fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
        fftw_free(buf_);
    }
}

Fft::Fft(Fft&& o) noexcept
    : size_(o.size_), plan_fwd_(o.plan_fwd_), plan_bwd_(o.plan_bwd_), buf_(o.buf_) {
    o.buf_ = nullptr;
    o.plan_fwd_ = o.plan_bwd_ = nullptr;
    o.size_ = 0;
}

Fft& Fft::operator=(Fft&& o) noexcept {
    if (this != &o) {
        std::swap(size_, o.size_);
        std::swap(plan_fwd_, o.plan_fwd_);
        std::swap(plan_bwd_, o.plan_bwd_);
        std::swap(buf_, o.buf_);
    }
    return *this;
}

void Fft::forward(const std::complex<double>* in, std::complex<double>* out) {
    std::memcpy(buf_, in, sizeof(std::complex<double>) * size_);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::memcpy(out, buf_, sizeof(std::complex<double>) * size_);
}

void Fft::backward(const std::complex<double>* in, std::complex<double>* out) {
    std::memcpy(buf_, in, sizeof(std::complex<double>) * size_);
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    std::memcpy(out, buf_, sizeof(std::complex<double>) * size_);
}

void shift_half(const std::complex<double>* src, std::complex<double>* dst, int m) {
    if (m < 2 || m % 2 != 0) throw InvalidInputError("shift_half: m must be even and >= 2");
    const int half = m / 2;
    if (src == dst) {
        for (int i = 0; i < half; ++i) std::swap(dst[i], dst[i + half]);
        return;
    }
    for (int i = 0; i < m; ++i) dst[i] = src[(i + half) % m];
}

}  // namespace nlse
