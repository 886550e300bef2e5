#pragma once

/// @file circle.hpp
/// @brief Numerical checks of the integral lemmas behind the circle-method
/// decomposition, using exact coefficient identities where they exist.

#include "gbx/check.hpp"
#include "gbx/error.hpp"
#include "gbx/exp_sums.hpp"
#include "gbx/goldbach.hpp"
#include "gbx/lambda.hpp"
#include "gbx/summation.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace gbx {

enum class integral_method { parseval, grid_quadrature };

inline char const * to_string(integral_method m)
{
    return m == integral_method::parseval ? "parseval" : "grid";
}

struct integral_check
{
    std::string name;
    std::int64_t N = 0;
    std::int64_t H = 0;
    std::int64_t y = 0;
    double parameter = 0.0;     // n for the residue check, xi for the short-arc check
    cplx value;
    double reference = 0.0;
    double discrepancy = 0.0;
    double bound = 0.0;         // lemma right-hand side without its constant
    double ratio = 0.0;         // discrepancy / bound
    double threshold = 0.0;
    integral_method method = integral_method::grid_quadrature;
    std::size_t grid = 0;
    bool pass = false;
    std::vector<std::string> notes;
};

namespace detail {

inline cplx inverse_z(std::int64_t N, double alpha)
{
    return 1.0 / cplx(1.0 / static_cast<double>(N), -2.0 * std::numbers::pi * alpha);
}

inline void finish(integral_check & c)
{
    c.ratio = c.bound > 0.0 ? c.discrepancy / c.bound : 0.0;
    c.pass = c.ratio <= c.threshold;
}

} // namespace detail

/// Largest grid any quadrature here will build.
inline constexpr std::size_t max_quadrature_grid = std::size_t{1} << 25;

/// int_{-1/2}^{1/2} e(-n alpha) / z^2 d alpha against n e^{-n/N}. Trapezoid
/// rule, refined by halving the step until two successive values agree to 1e-4.
inline integral_check residue_check(std::int64_t n, std::int64_t N, double threshold = 2.0)
{
    if (N < 2 || n < 1 || n > 2 * N) {
        detail::throw_domain("residue_check: need N >= 2 and 1 <= n <= 2N");
    }
    auto f = [&](double alpha) {
        cplx const iz = detail::inverse_z(N, alpha);
        return e_of(-n, alpha) * iz * iz;
    };
    std::size_t m = detail::next_pow2(static_cast<std::size_t>(16 * N));
    compensated_complex_sum<double> acc;
    acc += 0.5 * (f(-0.5) + f(0.5));
    for (std::size_t k = 1; k < m; ++k) {
        acc += f(-0.5 + static_cast<double>(k) / static_cast<double>(m));
    }
    cplx prev = acc.value() / static_cast<double>(m);
    cplx cur = prev;
    for (;;) {
        if (2 * m > max_quadrature_grid) {
            throw convergence_error("residue_check: grid limit reached for n = " + std::to_string(n));
        }
        for (std::size_t k = 1; k < 2 * m; k += 2) {
            acc += f(-0.5 + static_cast<double>(k) / static_cast<double>(2 * m));
        }
        m *= 2;
        cur = acc.value() / static_cast<double>(m);
        if (std::abs(cur - prev) <= 1e-4) {
            break;
        }
        prev = cur;
    }
    integral_check c;
    c.name = "residue";
    c.N = N;
    c.parameter = static_cast<double>(n);
    c.value = cur;
    c.reference = static_cast<double>(n) * std::exp(-static_cast<double>(n) / static_cast<double>(N));
    c.discrepancy = std::abs(cur - c.reference);
    c.bound = 1.0;
    c.threshold = threshold;
    c.method = integral_method::grid_quadrature;
    c.grid = m;
    detail::finish(c);
    return c;
}

/// int |S~ - V|^2 d alpha = sum_n (a(n) - 1)^2 e^{-2n/N} by Parseval, compared
/// with (N/2) ln N at scale N (ln N)^{1/2}. `coeff` supplies a(n) (normally Lambda).
inline integral_check mean_square_check(std::int64_t N, std::function<double(std::int64_t)> const & coeff,
                                        double eps, double threshold = 5.0)
{
    if (N < 2) {
        detail::throw_domain("mean_square_check: N must be >= 2");
    }
    std::int64_t const m = s_tilde_length(N, eps);
    compensated_sum<double> acc;
    double const nd = static_cast<double>(N);
    for (std::int64_t n = 1; n <= m; ++n) {
        double const d = coeff(n) - 1.0;
        acc += d * d * std::exp(-2.0 * static_cast<double>(n) / nd);
    }
    double const ln = std::log(nd);
    integral_check c;
    c.name = "mean_square";
    c.N = N;
    c.value = acc.value();
    c.reference = 0.5 * nd * ln;
    c.discrepancy = std::abs(acc.value() - c.reference);
    c.bound = nd * std::sqrt(ln);
    c.threshold = threshold;
    c.method = integral_method::parseval;
    c.grid = static_cast<std::size_t>(m);
    c.notes.push_back("exact for |S~ - V|^2; the lemma concerns |S~ - 1/z|^2 and V = 1/z + O(1)");
    detail::finish(c);
    return c;
}

inline integral_check mean_square_check(std::int64_t N, lambda_window const & window, double threshold = 5.0)
{
    double const eps = default_s_tilde_eps(N);
    window.require(1, static_cast<std::uint64_t>(s_tilde_length(N, eps)), "mean_square_check");
    return mean_square_check(
        N, [&window](std::int64_t n) { return window[static_cast<std::uint64_t>(n)]; }, eps, threshold);
}

namespace detail {

inline std::size_t short_arc_grid(std::size_t coeff_len, double xi)
{
    std::size_t m = default_grid_size(coeff_len);
    while (1.0 / static_cast<double>(m) > xi / 128.0) {
        m *= 2;
    }
    if (m > max_quadrature_grid) {
        throw resource_error("short-arc grid of size " + std::to_string(m) + " exceeds the limit");
    }
    return m;
}

} // namespace detail

/// int_{-xi}^{xi} |S~ - 1/z|^2 d alpha by a Riemann sum on an FFT grid of step
/// <= xi/128, against N xi (1 + ln 2N xi)^2.
inline integral_check lp_bound_check(std::int64_t N, double xi, lambda_window const & window,
                                     double threshold = 5.0)
{
    if (N < 2) {
        detail::throw_domain("lp_bound_check: N must be >= 2");
    }
    if (!(xi > 0.0 && xi <= 0.5)) {
        detail::throw_domain("lp_bound_check: xi must lie in (0, 1/2]");
    }
    auto const coeffs = s_tilde_coefficients(N, window, default_s_tilde_eps(N));
    std::size_t const m = detail::short_arc_grid(coeffs.c.size(), xi);
    auto const g = fft_grid(coeffs, m);
    compensated_sum<double> acc;
    for (std::size_t j = 0; j < m; ++j) {
        double const a = g.alpha(j);
        if (std::abs(a) <= xi) {
            acc += std::norm(g.values[j] - detail::inverse_z(N, a));
        }
    }
    double const nd = static_cast<double>(N);
    double const lg = 1.0 + std::log(2.0 * nd * xi);
    integral_check c;
    c.name = "short_arc";
    c.N = N;
    c.parameter = xi;
    c.value = acc.value() / static_cast<double>(m);
    c.reference = 0.0;
    c.discrepancy = c.value.real();
    c.bound = nd * xi * lg * lg;
    c.threshold = threshold;
    c.method = integral_method::grid_quadrature;
    c.grid = m;
    detail::finish(c);
    return c;
}

/// int_{-1/2}^{1/2} |V - 1/z|^2 d alpha on a uniform grid; bridges the
/// Parseval mean square and the full-circle short-arc value.
inline double v_inverse_z_l2(std::int64_t N, std::size_t m)
{
    compensated_sum<double> acc;
    for (std::size_t j = 0; j < m; ++j) {
        double const a = -0.5 + static_cast<double>(j) / static_cast<double>(m);
        acc += std::norm(v_kernel(N, a) - detail::inverse_z(N, a));
    }
    return acc.value() / static_cast<double>(m);
}

/// Largest N accepted by the decomposition check.
inline constexpr std::int64_t decomposition_max_n = 5000;

struct decomposition_result
{
    integral_check i1;           // against sum e^{-n/N} t_H n
    integral_check i2;           // I2/2 against sum e^{-n/N} t_H (psi - n)
    integral_check i3;           // |I3| against the y < H or y = H bound
    integral_check reassembly;   // I1 + I2 + I3 against sum e^{-n/N} t_H R(n)
    double max_imaginary = 0.0;
    bool pass = false;

    std::vector<integral_check> checks() const { return {i1, i2, i3, reassembly}; }
};

/// Splits sum_{n=N-H}^{N+y} e^{-n/N} t_H(n-N) R(n) = int S~^2 T_H(N,y;-alpha)
/// into I1 = int T/z^2, I2 = 2 int T R~/z, I3 = int T R~^2 with R~ = S~ - 1/z,
/// all by the trapezoid rule on M + 1 nodes, M > 2 M*. The integrand of the sum
/// is a trigonometric polynomial of degree below M, so the reassembly is exact
/// up to rounding.
inline decomposition_result i_decomposition_check(std::int64_t N, std::int64_t H, std::int64_t y,
                                                  lambda_window const & window, tolerances const & tol = {})
{
    auto const spec = make_spec(N, H, y);
    if (N > decomposition_max_n) {
        throw resource_error("i_decomposition_check: N = " + std::to_string(N) + " exceeds the cap "
                             + std::to_string(decomposition_max_n));
    }
    double const eps = default_s_tilde_eps(N);
    auto const s_coeffs = s_tilde_coefficients(N, window, eps);
    std::size_t const m = detail::next_pow2(2 * s_coeffs.c.size() + 2 * static_cast<std::size_t>(N + H) + 1);
    auto const s_grid = fft_grid(s_coeffs, m);
    auto const t_grid = fft_grid(t_sum_coefficients(N, H, y), m);

    compensated_complex_sum<double> i1;
    compensated_complex_sum<double> i2;
    compensated_complex_sum<double> i3;
    compensated_complex_sum<double> whole;
    auto const mm = static_cast<std::int64_t>(m);
    for (std::int64_t k = 0; k <= mm; ++k) {
        double const alpha = -0.5 + static_cast<double>(k) / static_cast<double>(m);
        auto const j = static_cast<std::size_t>(((k - mm / 2) % mm + mm) % mm);
        double const w = (k == 0 || k == mm) ? 0.5 : 1.0;
        cplx const t_minus = std::conj(t_grid.values[j]);
        cplx const s = s_grid.values[j];
        cplx const iz = detail::inverse_z(N, alpha);
        cplx const r = s - iz;
        i1 += w * t_minus * iz * iz;
        i2 += w * 2.0 * t_minus * r * iz;
        i3 += w * t_minus * r * r;
        whole += w * t_minus * s * s;
    }
    double const inv_m = 1.0 / static_cast<double>(m);
    cplx const v1 = i1.value() * inv_m;
    cplx const v2 = i2.value() * inv_m;
    cplx const v3 = i3.value() * inv_m;

    // reference sums over the window, ascending n
    psi_table const psi(window);
    auto const rwin = r_window_fft(make_spec(N, H), window);
    compensated_sum<double> ref1;
    compensated_sum<double> ref2;
    compensated_sum<double> ref_r;
    double const nd = static_cast<double>(N);
    for (std::int64_t n = spec.first(); n <= N + y; ++n) {
        double const wt = std::exp(-static_cast<double>(n) / nd) * static_cast<double>(cesaro_weight(H, n - N));
        ref1 += wt * static_cast<double>(n);
        ref2 += wt * (psi(static_cast<std::uint64_t>(n)) - static_cast<double>(n));
        ref_r += wt * rwin(n);
    }

    double const hd = static_cast<double>(H);
    double const yd = static_cast<double>(y);
    double const ln = std::log(nd);
    auto base = [&](char const * name) {
        integral_check c;
        c.name = name;
        c.N = N;
        c.H = H;
        c.y = y;
        c.method = integral_method::grid_quadrature;
        c.grid = m;
        c.threshold = tol.decomposition;
        return c;
    };

    decomposition_result out;
    out.i1 = base("I1");
    out.i1.value = v1;
    out.i1.reference = ref1.value();
    out.i1.discrepancy = std::abs(v1.real() - ref1.value());
    out.i1.bound = hd * (hd + yd + 1.0);
    detail::finish(out.i1);

    out.i2 = base("I2");
    out.i2.value = v2;
    out.i2.reference = ref2.value();
    out.i2.discrepancy = std::abs(0.5 * v2.real() - ref2.value());
    out.i2.bound = std::pow(hd, 1.5) * std::sqrt(nd) * std::sqrt(ln);
    detail::finish(out.i2);

    out.i3 = base("I3");
    out.i3.value = v3;
    out.i3.discrepancy = std::abs(v3.real());
    if (y < H) {
        out.i3.bound = hd * nd * ln * ln * std::log(2.0 * hd);
    } else {
        double const l2 = std::log(2.0 * nd / hd);
        out.i3.bound = hd * nd * l2 * l2;
    }
    detail::finish(out.i3);

    cplx const total = v1 + v2 + v3;
    out.reassembly = base("reassembly");
    out.reassembly.value = total;
    out.reassembly.reference = ref_r.value();
    out.reassembly.discrepancy = std::abs(total.real() - ref_r.value());
    // rounding scale: the largest of the three pieces, or 1 for an empty window
    out.reassembly.bound = std::max({std::abs(v1), std::abs(v2), std::abs(v3), 1.0});
    out.reassembly.threshold = tol.reassembly_rel;
    detail::finish(out.reassembly);
    out.reassembly.notes.push_back("direct trapezoid total " + fmt_real(whole.value().real() * inv_m));

    out.max_imaginary = std::max({std::abs(v1.imag()), std::abs(v2.imag()), std::abs(v3.imag())});
    out.pass = out.i1.pass && out.i2.pass && out.i3.pass && out.reassembly.pass;
    return out;
}

} // namespace gbx
