#pragma once

/// @file fft.hpp
/// @brief Thin RAII layer over FFTW for the two transforms the library needs:
/// real self-convolution in extended precision and complex trigonometric sums
/// on a uniform grid.

#include "gbx/error.hpp"

#include <fftw3.h>

#include <bit>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gbx {

/// Transform lengths above this are refused with resource_error.
inline constexpr std::size_t default_fft_budget = std::size_t{1} << 27;

namespace detail {

template <typename T>
struct fftw_deleter
{
    void operator()(T * p) const { fftwl_free(p); }
};

struct fftwl_plan_deleter
{
    void operator()(fftwl_plan p) const { fftwl_destroy_plan(p); }
};

struct fftw_plan_deleter
{
    void operator()(fftw_plan p) const { fftw_destroy_plan(p); }
};

using fftwl_plan_ptr = std::unique_ptr<std::remove_pointer_t<fftwl_plan>, fftwl_plan_deleter>;
using fftw_plan_ptr = std::unique_ptr<std::remove_pointer_t<fftw_plan>, fftw_plan_deleter>;

inline std::size_t next_pow2(std::size_t n)
{
    return std::bit_ceil(std::max<std::size_t>(n, 1));
}

} // namespace detail

/// Computes c[j] = sum_i a[i] a[j - i] for j in [first, last] with a single
/// real-input transform in long double. The transform length is the least power
/// of two that keeps the requested indices free of circular aliasing.
inline std::vector<double> self_convolution(std::span<double const> a, std::size_t first, std::size_t last,
                                            std::size_t budget = default_fft_budget)
{
    if (a.empty() || first > last) {
        detail::throw_domain("self_convolution: empty input or inverted index range");
    }
    std::size_t const top = 2 * (a.size() - 1);
    // index j receives the alias j + L; it is harmless when j + L > top
    std::size_t const min_len = std::max(last + 1, top >= first ? top - first + 1 : std::size_t{1});
    std::size_t const len = detail::next_pow2(std::max(min_len, a.size()));
    if (len > budget) {
        throw resource_error("self_convolution: transform length " + std::to_string(len) + " exceeds budget "
                             + std::to_string(budget));
    }
    std::size_t const bins = len / 2 + 1;
    std::unique_ptr<long double[], detail::fftw_deleter<long double>> real(
        static_cast<long double *>(fftwl_malloc(sizeof(long double) * len)));
    std::unique_ptr<fftwl_complex[], detail::fftw_deleter<fftwl_complex>> spec(
        static_cast<fftwl_complex *>(fftwl_malloc(sizeof(fftwl_complex) * bins)));
    if (!real || !spec) {
        throw resource_error("self_convolution: allocation of length " + std::to_string(len) + " failed");
    }
    detail::fftwl_plan_ptr forward(
        fftwl_plan_dft_r2c_1d(static_cast<int>(len), real.get(), spec.get(), FFTW_ESTIMATE));
    detail::fftwl_plan_ptr backward(
        fftwl_plan_dft_c2r_1d(static_cast<int>(len), spec.get(), real.get(), FFTW_ESTIMATE));

    for (std::size_t i = 0; i < len; ++i) {
        real[i] = i < a.size() ? static_cast<long double>(a[i]) : 0.0L;
    }
    fftwl_execute(forward.get());
    for (std::size_t k = 0; k < bins; ++k) {
        long double const re = spec[k][0];
        long double const im = spec[k][1];
        spec[k][0] = re * re - im * im;
        spec[k][1] = 2.0L * re * im;
    }
    fftwl_execute(backward.get());

    std::vector<double> out(last - first + 1);
    long double const scale = 1.0L / static_cast<long double>(len);
    for (std::size_t j = first; j <= last; ++j) {
        out[j - first] = static_cast<double>(real[j] * scale);
    }
    return out;
}

/// values[j] = sum_n coeffs[n] * exp(2 pi i n j / M) for j in [0, M), M = coeffs.size().
inline std::vector<std::complex<double>> trig_sum_grid(std::vector<std::complex<double>> coeffs,
                                                       std::size_t budget = default_fft_budget)
{
    std::size_t const m = coeffs.size();
    if (m == 0) {
        detail::throw_domain("trig_sum_grid: empty coefficient array");
    }
    if (m > budget) {
        throw resource_error("trig_sum_grid: grid size " + std::to_string(m) + " exceeds budget");
    }
    auto * data = reinterpret_cast<fftw_complex *>(coeffs.data());
    detail::fftw_plan_ptr plan(fftw_plan_dft_1d(static_cast<int>(m), data, data, FFTW_BACKWARD, FFTW_ESTIMATE));
    fftw_execute(plan.get());
    return coeffs;
}

} // namespace gbx
