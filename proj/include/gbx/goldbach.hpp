#pragma once

/// @file goldbach.hpp
/// @brief R(n) = sum_{h+k=n} Lambda(h) Lambda(k) and the Cesaro-weighted window
/// sums built from it.

#include "gbx/error.hpp"
#include "gbx/fft.hpp"
#include "gbx/format.hpp"
#include "gbx/lambda.hpp"
#include "gbx/summation.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gbx {

/// The window parameters (N, H) and the partial-window offset y.
struct window_spec
{
    std::int64_t N = 2;
    std::int64_t H = 1;
    std::int64_t y = 1;

    /// Throws domain_error unless N >= 2, 1 <= H <= N and -H <= y <= H.
    void validate() const
    {
        if (N < 2) {
            detail::throw_domain("window_spec: N = " + std::to_string(N) + " must be >= 2");
        }
        if (H < 1 || H > N) {
            detail::throw_domain("window_spec: H = " + std::to_string(H) + " must satisfy 1 <= H <= N = "
                                 + std::to_string(N));
        }
        if (y < -H || y > H) {
            detail::throw_domain("window_spec: y = " + std::to_string(y) + " outside [-H, H]");
        }
    }

    std::int64_t first() const { return N - H; }
    std::int64_t last() const { return N + H; }

    friend bool operator==(window_spec const &, window_spec const &) = default;
};

inline window_spec make_spec(std::int64_t N, std::int64_t H)
{
    window_spec s{N, H, H};
    s.validate();
    return s;
}

inline window_spec make_spec(std::int64_t N, std::int64_t H, std::int64_t y)
{
    window_spec s{N, H, y};
    s.validate();
    return s;
}

/// Cesaro weight t_H(m) = H - |m| for |m| <= H, zero outside.
constexpr std::int64_t cesaro_weight(std::int64_t H, std::int64_t m)
{
    std::int64_t const a = m < 0 ? -m : m;
    return a > H ? 0 : H - a;
}

/// sum_{n=N-H}^{N+H} t_H(n-N) * n in exact integer arithmetic (equals H^2 N).
inline __int128 weighted_first_moment(std::int64_t N, std::int64_t H)
{
    __int128 acc = 0;
    for (std::int64_t n = N - H; n <= N + H; ++n) {
        acc += static_cast<__int128>(cesaro_weight(H, n - N)) * n;
    }
    return acc;
}

/// R(n) by the defining convolution, h ascending, compensated.
inline double r_direct(std::int64_t n, lambda_window const & window)
{
    if (n < 2) {
        detail::throw_domain("r_direct: n must be >= 2");
    }
    window.require(1, static_cast<std::uint64_t>(n - 1), "r_direct");
    compensated_sum<double> acc;
    for (std::int64_t h = 1; h < n; ++h) {
        double const a = window[static_cast<std::uint64_t>(h)];
        if (a != 0.0) {
            acc += a * window[static_cast<std::uint64_t>(n - h)];
        }
    }
    return acc.value();
}

enum class r_method { direct, fft };

inline char const * to_string(r_method m)
{
    return m == r_method::direct ? "direct" : "fft";
}

/// R(n) for n in [N - H, N + H].
struct r_window
{
    window_spec spec;
    std::vector<double> values;
    r_method method = r_method::fft;

    double operator()(std::int64_t n) const { return values[static_cast<std::size_t>(n - spec.first())]; }
};

inline r_window r_window_direct(window_spec const & spec, lambda_window const & window)
{
    spec.validate();
    r_window out{spec, {}, r_method::direct};
    out.values.reserve(static_cast<std::size_t>(2 * spec.H + 1));
    for (std::int64_t n = spec.first(); n <= spec.last(); ++n) {
        out.values.push_back(n < 2 ? 0.0 : r_direct(n, window));
    }
    return out;
}

/// R over the window from one full self-convolution of Lambda(1..N+H).
inline r_window r_window_fft(window_spec const & spec, lambda_window const & window,
                             std::size_t budget = default_fft_budget)
{
    spec.validate();
    auto const top = static_cast<std::uint64_t>(spec.last());
    window.require(1, top, "r_window_fft");
    std::vector<double> a(top + 1, 0.0);
    for (std::uint64_t n = 1; n <= top; ++n) {
        a[n] = window[n];
    }
    auto conv = self_convolution(a, static_cast<std::size_t>(spec.first()), static_cast<std::size_t>(spec.last()),
                                 budget);
    for (auto & v : conv) {
        // exact values are sums of nonnegative terms
        if (v < 0.0) {
            v = 0.0;
        }
    }
    return {spec, std::move(conv), r_method::fft};
}

/// Full table R(0..n_max) from one convolution.
inline std::vector<double> r_prefix_table(std::int64_t n_max, lambda_window const & window,
                                          std::size_t budget = default_fft_budget)
{
    if (n_max < 2) {
        detail::throw_domain("r_prefix_table: n_max must be >= 2");
    }
    window.require(1, static_cast<std::uint64_t>(n_max), "r_prefix_table");
    std::vector<double> a(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (std::int64_t n = 1; n <= n_max; ++n) {
        a[static_cast<std::size_t>(n)] = window[static_cast<std::uint64_t>(n)];
    }
    auto conv = self_convolution(a, 0, static_cast<std::size_t>(n_max), budget);
    for (auto & v : conv) {
        if (v < 0.0) {
            v = 0.0;
        }
    }
    return conv;
}

namespace detail {

inline void require_match(window_spec const & spec, r_window const & rwin, char const * who)
{
    if (rwin.spec.N != spec.N || rwin.spec.H != spec.H) {
        throw_data(std::string(who) + ": R window built for (N, H) = (" + std::to_string(rwin.spec.N) + ", "
                   + std::to_string(rwin.spec.H) + "), expected (" + std::to_string(spec.N) + ", "
                   + std::to_string(spec.H) + ")");
    }
}

} // namespace detail

/// (1/H) sum_{n=N-H}^{N+H} t_H(n-N) R(n); integer weights, one division at the end.
inline double cesaro_lhs_main(window_spec const & spec, r_window const & rwin)
{
    spec.validate();
    detail::require_match(spec, rwin, "cesaro_lhs_main");
    compensated_sum<double> acc;
    for (std::int64_t n = spec.first(); n <= spec.last(); ++n) {
        acc += static_cast<double>(cesaro_weight(spec.H, n - spec.N)) * rwin(n);
    }
    return acc.value() / static_cast<double>(spec.H);
}

/// Per-n summands e^{-n/N} (R(n) - (2 psi(n) - n)) t_H(n-N) / H for n in [N-H, N+H].
inline std::vector<double> average_summands(window_spec const & spec, r_window const & rwin, psi_table const & psi)
{
    spec.validate();
    detail::require_match(spec, rwin, "average_summands");
    if (psi.hi() < static_cast<std::uint64_t>(spec.last())) {
        detail::throw_data("average_summands: psi cache ends at " + std::to_string(psi.hi()) + " < N + H");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(2 * spec.H + 1));
    double const n_real = static_cast<double>(spec.N);
    double const h_real = static_cast<double>(spec.H);
    for (std::int64_t n = spec.first(); n <= spec.last(); ++n) {
        double const nd = static_cast<double>(n);
        double const diff = rwin(n) - (2.0 * psi(static_cast<std::uint64_t>(n)) - nd);
        out.push_back(std::exp(-nd / n_real) * diff * static_cast<double>(cesaro_weight(spec.H, n - spec.N)) / h_real);
    }
    return out;
}

/// sum_{n=N-H}^{N+y} e^{-n/N} (R(n) - (2 psi(n) - n)) (1 - |n-N|/H), ascending n.
inline double cesaro_lhs_average(window_spec const & spec, r_window const & rwin, psi_table const & psi)
{
    auto const terms = average_summands(spec, rwin, psi);
    compensated_sum<double> acc;
    for (std::int64_t n = spec.first(); n <= spec.N + spec.y; ++n) {
        acc += terms[static_cast<std::size_t>(n - spec.first())];
    }
    return acc.value();
}

/// Maximum of |prefix sum up to N + y| over y in [-H, H).
struct max_over_y_result
{
    double value = 0.0;
    std::int64_t y = 0;
};

/// `summands` holds the terms for n = N-H, ..., N+H-1 (at least 2H entries).
/// One prefix scan; ties resolve to the smallest y.
inline max_over_y_result max_over_y(window_spec const & spec, std::span<double const> summands)
{
    spec.validate();
    if (summands.size() < static_cast<std::size_t>(2 * spec.H)) {
        detail::throw_data("max_over_y: need " + std::to_string(2 * spec.H) + " summands, got "
                           + std::to_string(summands.size()));
    }
    max_over_y_result best{-1.0, -spec.H};
    compensated_sum<double> acc;
    for (std::int64_t y = -spec.H; y < spec.H; ++y) {
        acc += summands[static_cast<std::size_t>(y + spec.H)];
        double const v = std::abs(acc.value());
        if (v > best.value) {
            best = {v, y};
        }
    }
    return best;
}

/// CSV export: header `n,R(n)`, rows ascending in n.
inline void write_r_csv(std::ostream & out, r_window const & rwin)
{
    out << "n,R(n)\n";
    for (std::int64_t n = rwin.spec.first(); n <= rwin.spec.last(); ++n) {
        out << n << ',' << fmt_real(rwin(n)) << '\n';
    }
}

} // namespace gbx
