#ifndef GPFLOW_FFT_HPP
#define GPFLOW_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <fftw3.h>

namespace gpflow {

using cplx = std::complex<double>;

/** Thin RAII wrapper around one-dimensional complex FFTW transforms.
 *
 *  The forward transform is scaled by 1/n so that the output holds the
 *  coefficients of the trigonometric interpolant; the inverse transform is
 *  unscaled. Plans are created with FFTW_ESTIMATE, which keeps results
 *  bit-reproducible across runs. Plan creation is serialized internally
 *  (the FFTW planner is not thread safe); executing transforms on distinct
 *  Fft instances from different threads is fine.
 */
class Fft {
public:
    explicit Fft(std::size_t n);
    ~Fft();

    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;
    Fft(Fft&&) noexcept;
    Fft& operator=(Fft&&) noexcept;

    std::size_t size() const { return n_; }

    /** Physical samples -> coefficients (scaled by 1/n). */
    void forward(std::span<const cplx> in, std::span<cplx> out) const;
    /** Coefficients -> physical samples (unscaled). */
    void inverse(std::span<const cplx> in, std::span<cplx> out) const;

    /** Signed wavenumber index for array slot m: m for m < n/2, m - n otherwise. */
    static long mode_xi(std::size_t m, std::size_t n) {
        return m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
    }

private:
    std::size_t n_ = 0;
    fftw_complex* buf_ = nullptr; // in-place work buffer
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

} // namespace gpflow

#endif
