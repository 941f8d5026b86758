#include "gpflow/fft.hpp"

#include <cassert>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace gpflow {

namespace {
// FFTW's planner mutates global state; creation/destruction must be serialized.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

Fft::Fft(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("Fft: size must be positive");
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf_ = fftw_alloc_complex(n);
    fwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
    if (buf_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(bwd_);
        fftw_destroy_plan(fwd_);
        fftw_free(buf_);
    }
}

Fft::Fft(Fft&& other) noexcept
    : n_(other.n_), buf_(other.buf_), fwd_(other.fwd_), bwd_(other.bwd_) {
    other.buf_ = nullptr;
    other.fwd_ = nullptr;
    other.bwd_ = nullptr;
    other.n_ = 0;
}

Fft& Fft::operator=(Fft&& other) noexcept {
    if (this != &other) {
        if (buf_) {
            std::lock_guard<std::mutex> lock(planner_mutex());
            fftw_destroy_plan(bwd_);
            fftw_destroy_plan(fwd_);
            fftw_free(buf_);
        }
        n_ = other.n_;
        buf_ = other.buf_;
        fwd_ = other.fwd_;
        bwd_ = other.bwd_;
        other.buf_ = nullptr;
        other.fwd_ = nullptr;
        other.bwd_ = nullptr;
        other.n_ = 0;
    }
    return *this;
}

void Fft::forward(std::span<const cplx> in, std::span<cplx> out) const {
    assert(in.size() == n_ && out.size() == n_);
    std::memcpy(buf_, in.data(), n_ * sizeof(cplx));
    fftw_execute(fwd_);
    const double scale = 1.0 / static_cast<double>(n_);
    auto* b = reinterpret_cast<const cplx*>(buf_);
    for (std::size_t m = 0; m < n_; ++m) out[m] = b[m] * scale;
}

void Fft::inverse(std::span<const cplx> in, std::span<cplx> out) const {
    assert(in.size() == n_ && out.size() == n_);
    std::memcpy(buf_, in.data(), n_ * sizeof(cplx));
    fftw_execute(bwd_);
    std::memcpy(out.data(), buf_, n_ * sizeof(cplx));
}

} // namespace gpflow
