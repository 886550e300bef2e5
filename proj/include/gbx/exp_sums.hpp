#pragma once

/// @file exp_sums.hpp
/// @brief The circle-method kernels: damped prime sum S~(alpha), the geometric
/// kernel V(alpha), the Cesaro-weighted sum T_H(N, y; alpha), and FFT sampling
/// of all three on uniform grids.

#include "gbx/error.hpp"
#include "gbx/fft.hpp"
#include "gbx/goldbach.hpp"
#include "gbx/lambda.hpp"
#include "gbx/summation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

namespace gbx {

using cplx = std::complex<double>;

/// Distance from x to the nearest integer.
inline double dist_to_int(double x)
{
    return std::abs(x - std::nearbyint(x));
}

/// e(x) = exp(2 pi i x), reduced mod 1 in extended precision first.
inline cplx e_of(long double x)
{
    long double const f = x - std::nearbyint(x);
    return std::polar(1.0, static_cast<double>(2 * std::numbers::pi_v<long double> * f));
}

/// e(n alpha) for integer n without losing the fractional part of n alpha:
/// n alpha = p + err exactly (fma), and p - round(p) is exact in double. The
/// angle and its sine and cosine are taken in long double; with double-rounded
/// pi the per-term phase errors are correlated and add up in long sums.
inline cplx e_of(std::int64_t n, double alpha)
{
    double const nd = static_cast<double>(n);
    double const p = nd * alpha;
    double const err = std::fma(nd, alpha, -p);
    long double const f = static_cast<long double>(p - std::nearbyint(p)) + err;
    long double const ph = 2 * std::numbers::pi_v<long double> * f;
    return {static_cast<double>(std::cos(ph)), static_cast<double>(std::sin(ph))};
}

struct alpha_point
{
    double alpha = 0.0;
    cplx z;  // 1/N - 2 pi i alpha
};

inline alpha_point make_alpha(std::int64_t N, double alpha)
{
    if (N < 1) {
        detail::throw_domain("make_alpha: N must be >= 1");
    }
    if (!(std::abs(alpha) <= 0.5)) {
        detail::throw_domain("make_alpha: alpha = " + std::to_string(alpha) + " outside [-1/2, 1/2]");
    }
    return {alpha, cplx(1.0 / static_cast<double>(N), -2.0 * std::numbers::pi * alpha)};
}

/// V(alpha) = sum_{m >= 1} e^{-m/N} e(m alpha) = 1 / (e^z - 1).
inline cplx v_kernel(std::int64_t N, double alpha)
{
    cplx const z = make_alpha(N, alpha).z;
    if (std::abs(z) < 1e-4) {
        cplx const z3 = z * z * z;
        return 1.0 / z - 0.5 + z / 12.0 - z3 / 720.0;
    }
    // e^z - 1 with the real part formed without cancellation
    double const x = z.real();
    double const y = z.imag();
    double const s = std::sin(0.5 * y);
    cplx const em1(std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y));
    return 1.0 / em1;
}

namespace detail {

/// Upper bound for sum_{n > m} ln(n) e^{-n/N}. Past n ln n >= 2N consecutive
/// terms shrink at least by q = e^{-1/(2N)}, so the tail is a geometric series.
inline double s_tilde_tail_bound(std::int64_t N, std::int64_t m)
{
    double const nd = static_cast<double>(N);
    double const next = static_cast<double>(m + 1);
    double const q = std::exp(-0.5 / nd);
    return std::log(next) * std::exp(-next / nd) / (1.0 - q);
}

} // namespace detail

/// Truncation length M* with sum_{n > M*} ln(n) e^{-n/N} <= eps.
inline std::int64_t s_tilde_length(std::int64_t N, double eps)
{
    if (N < 1) {
        detail::throw_domain("s_tilde_length: N must be >= 1");
    }
    if (!(eps > 0.0)) {
        detail::throw_domain("s_tilde_length: eps must be positive");
    }
    std::int64_t m = 2 * N + 2;
    while (static_cast<double>(m) * std::log(static_cast<double>(m)) < 2.0 * static_cast<double>(N)) {
        m *= 2;
    }
    std::int64_t step = std::max<std::int64_t>(N / 16, 1);
    while (detail::s_tilde_tail_bound(N, m) > eps) {
        m += step;
    }
    return m;
}

inline double default_s_tilde_eps(std::int64_t N)
{
    return 1e-9 * static_cast<double>(N);
}

/// S~(alpha) = sum_{n <= M*} Lambda(n) e^{-n/N} e(n alpha), ascending n.
inline cplx s_tilde(std::int64_t N, double alpha, lambda_window const & window, double eps)
{
    make_alpha(N, alpha);
    std::int64_t const m = s_tilde_length(N, eps);
    window.require(1, static_cast<std::uint64_t>(m), "s_tilde");
    compensated_complex_sum<double> acc;
    double const nd = static_cast<double>(N);
    for (std::int64_t n = 2; n <= m; ++n) {
        double const l = window[static_cast<std::uint64_t>(n)];
        if (l != 0.0) {
            acc += l * std::exp(-static_cast<double>(n) / nd) * e_of(n, alpha);
        }
    }
    return acc.value();
}

inline cplx s_tilde(std::int64_t N, double alpha, lambda_window const & window)
{
    return s_tilde(N, alpha, window, default_s_tilde_eps(N));
}

/// T_H(N, y; alpha) = sum_{n=N-H}^{N+y} t_H(n-N) e(n alpha), ascending n.
inline cplx t_sum_direct(std::int64_t N, std::int64_t H, std::int64_t y, double alpha)
{
    auto const spec = make_spec(N, H, y);
    compensated_complex_sum<double> acc;
    for (std::int64_t n = spec.first(); n <= N + y; ++n) {
        auto const w = cesaro_weight(H, n - N);
        if (w != 0) {
            acc += static_cast<double>(w) * e_of(n, alpha);
        }
    }
    return acc.value();
}

/// Below this value of H ||alpha|| the closed forms lose too many digits to
/// the (1 - e(alpha)) denominators and the direct sum is used.
inline constexpr double t_closed_cutoff = 1e-3;

/// T_H(N, y; alpha) in closed form: the squared geometric sum for y = H, the
/// (1 - e(alpha)) / (1 - e(alpha))^2 form for 0 <= y < H, and the derivative of
/// a geometric series for y < 0.
inline cplx t_sum_closed(std::int64_t N, std::int64_t H, std::int64_t y, double alpha)
{
    make_spec(N, H, y);
    double const a = dist_to_int(alpha);
    if (static_cast<double>(H) * a < t_closed_cutoff) {
        return t_sum_direct(N, H, y, alpha);
    }
    if (y == H) {
        double const pa = std::numbers::pi * alpha;
        double const r = std::sin(static_cast<double>(H) * pa) / std::sin(pa);
        return r * r * e_of(N, alpha);
    }
    cplx const w = e_of(static_cast<long double>(alpha));
    cplx const one_minus = 1.0 - w;
    if (y >= 0) {
        cplx const first = e_of(N + y + 1, alpha) / one_minus * static_cast<double>(y - H);
        cplx const second = e_of(N + 1, alpha) / (one_minus * one_minus)
                            * (e_of(y, alpha) - 2.0 + e_of(-H, alpha));
        return first + second;
    }
    // sum_{j=0}^{K} j w^j with K = y + H, then shift by e((N - H) alpha)
    std::int64_t const k = y + H;
    cplx const wk = e_of(k, alpha);
    cplx const g = w * (1.0 - static_cast<double>(k + 1) * wk + static_cast<double>(k) * wk * w)
                   / (one_minus * one_minus);
    return e_of(N - H, alpha) * g;
}

struct t_bound_result
{
    std::int64_t N = 0;
    std::int64_t H = 0;
    std::int64_t y = 0;
    std::size_t samples = 0;
    double ratio_first = 0.0;            // sup |T| / (H min(H, 1/||alpha||))
    double alpha_first = 0.0;
    double ratio_second = 0.0;           // sup |T| / min(H^2, 1/||alpha||^2), y = H only
    double alpha_second = 0.0;
    bool second_applies = false;
    double sharpness = 0.0;              // max over alpha in [1/H, 1/2] of |T| ||alpha|| / H
    bool sharpness_applies = false;      // y <= H/2
    double threshold = 0.0;
    double sharpness_floor = 0.0;
    bool pass = false;
};

/// Log-spaced alpha samples from 1/(4H^2) to 1/2, plus alpha = 0.
inline std::vector<double> t_scan_grid(std::int64_t H, std::size_t samples)
{
    if (samples < 2) {
        detail::throw_domain("t_scan_grid: need at least 2 samples");
    }
    double const lo = 1.0 / (4.0 * static_cast<double>(H) * static_cast<double>(H));
    double const llo = std::log(lo);
    double const lhi = std::log(0.5);
    std::vector<double> out{0.0};
    for (std::size_t i = 0; i < samples; ++i) {
        double const t = static_cast<double>(i) / static_cast<double>(samples - 1);
        out.push_back(std::min(0.5, std::exp(llo + t * (lhi - llo))));
    }
    return out;
}

inline t_bound_result t_bound_scan(std::int64_t N, std::int64_t H, std::int64_t y, std::size_t samples,
                                   double threshold = 2.0, double sharpness_floor = 0.1)
{
    make_spec(N, H, y);
    t_bound_result r;
    r.N = N;
    r.H = H;
    r.y = y;
    r.threshold = threshold;
    r.sharpness_floor = sharpness_floor;
    r.second_applies = y == H;
    r.sharpness_applies = 2 * y <= H && H > 1;
    double const hd = static_cast<double>(H);
    auto const grid = t_scan_grid(H, samples);
    r.samples = grid.size();
    for (double alpha : grid) {
        double const t = std::abs(t_sum_closed(N, H, y, alpha));
        double const a = dist_to_int(alpha);
        double const inv = a > 0.0 ? 1.0 / a : INFINITY;
        double const first = t / (hd * std::min(hd, inv));
        if (first > r.ratio_first) {
            r.ratio_first = first;
            r.alpha_first = alpha;
        }
        if (r.second_applies) {
            double const second = t / std::min(hd * hd, inv * inv);
            if (second > r.ratio_second) {
                r.ratio_second = second;
                r.alpha_second = alpha;
            }
        }
        if (r.sharpness_applies && a >= 1.0 / hd) {
            r.sharpness = std::max(r.sharpness, t * a / hd);
        }
    }
    r.pass = r.ratio_first <= threshold && (!r.second_applies || r.ratio_second <= threshold)
             && (!r.sharpness_applies || r.sharpness >= sharpness_floor);
    return r;
}

enum class kernel_tag { s_tilde, v, t_sum };

inline char const * to_string(kernel_tag k)
{
    switch (k) {
    case kernel_tag::s_tilde: return "s_tilde";
    case kernel_tag::v: return "v";
    case kernel_tag::t_sum: return "t_sum";
    }
    return "?";
}

/// Real coefficients c[i] attached to frequencies first + i.
struct coefficient_sequence
{
    kernel_tag tag = kernel_tag::t_sum;
    std::int64_t first = 0;
    std::vector<double> c;
};

inline coefficient_sequence t_sum_coefficients(std::int64_t N, std::int64_t H, std::int64_t y)
{
    auto const spec = make_spec(N, H, y);
    coefficient_sequence out{kernel_tag::t_sum, spec.first(), {}};
    for (std::int64_t n = spec.first(); n <= N + y; ++n) {
        out.c.push_back(static_cast<double>(cesaro_weight(H, n - N)));
    }
    return out;
}

/// e^{-m/N} for m = 1..terms.
inline coefficient_sequence v_coefficients(std::int64_t N, std::int64_t terms)
{
    if (N < 1 || terms < 1) {
        detail::throw_domain("v_coefficients: N and terms must be >= 1");
    }
    coefficient_sequence out{kernel_tag::v, 1, {}};
    for (std::int64_t m = 1; m <= terms; ++m) {
        out.c.push_back(std::exp(-static_cast<double>(m) / static_cast<double>(N)));
    }
    return out;
}

/// Lambda(n) e^{-n/N} for n = 1..M*, with M* from the tail budget.
inline coefficient_sequence s_tilde_coefficients(std::int64_t N, lambda_window const & window, double eps)
{
    std::int64_t const m = s_tilde_length(N, eps);
    window.require(1, static_cast<std::uint64_t>(m), "s_tilde_coefficients");
    coefficient_sequence out{kernel_tag::s_tilde, 1, {}};
    for (std::int64_t n = 1; n <= m; ++n) {
        out.c.push_back(window[static_cast<std::uint64_t>(n)] * std::exp(-static_cast<double>(n) / static_cast<double>(N)));
    }
    return out;
}

struct grid_evaluation
{
    kernel_tag tag = kernel_tag::t_sum;
    std::size_t M = 0;
    std::vector<cplx> values;

    /// alpha = j/M mapped to [-1/2, 1/2).
    double alpha(std::size_t j) const
    {
        return 2 * j < M ? static_cast<double>(j) / static_cast<double>(M)
                         : static_cast<double>(j) / static_cast<double>(M) - 1.0;
    }
};

/// Least power of two >= 4 x the coefficient length.
inline std::size_t default_grid_size(std::size_t length)
{
    return detail::next_pow2(4 * std::max<std::size_t>(length, 1));
}

/// values[j] = sum_n c_n e(n j / M). Frequencies are folded mod M, which is
/// exact for a finite sequence; M below twice the length is refused so that
/// grids carry a safety margin against later refinement.
inline grid_evaluation fft_grid(coefficient_sequence const & coeffs, std::size_t M = 0,
                                std::size_t budget = default_fft_budget)
{
    std::size_t const len = coeffs.c.size();
    if (M == 0) {
        M = default_grid_size(len);
    }
    if (!std::has_single_bit(M)) {
        detail::throw_domain("fft_grid: M = " + std::to_string(M) + " is not a power of two");
    }
    if (M < 2 * len) {
        throw domain_error("fft_grid: alias budget violated, M = " + std::to_string(M) + " < 2 x "
                           + std::to_string(len) + " coefficients");
    }
    std::vector<cplx> buf(M, cplx(0.0, 0.0));
    auto const mm = static_cast<std::int64_t>(M);
    for (std::size_t i = 0; i < len; ++i) {
        std::int64_t const n = coeffs.first + static_cast<std::int64_t>(i);
        buf[static_cast<std::size_t>(((n % mm) + mm) % mm)] += coeffs.c[i];
    }
    return {coeffs.tag, M, trig_sum_grid(std::move(buf), budget)};
}

/// CSV dump `j,alpha,re,im`.
inline void write_grid_csv(std::ostream & out, grid_evaluation const & g)
{
    out << "j,alpha,re,im\n";
    for (std::size_t j = 0; j < g.M; ++j) {
        out << j << ',' << fmt_real(g.alpha(j)) << ',' << fmt_real(g.values[j].real()) << ','
            << fmt_real(g.values[j].imag()) << '\n';
    }
}

} // namespace gbx
