#pragma once

/// @file zero_sums.hpp
/// @brief Truncated sums over nontrivial zeros rho = 1/2 + i gamma, each term
/// paired with its conjugate (2 Re), with heuristic tail estimates.

#include "gbx/check.hpp"
#include "gbx/error.hpp"
#include "gbx/goldbach.hpp"
#include "gbx/lambda.hpp"
#include "gbx/parallel.hpp"
#include "gbx/summation.hpp"
#include "gbx/zeta.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace gbx {

using cplx = std::complex<double>;

enum class evaluation_path { direct, series_expansion, integral_form, mixed };

inline char const * to_string(evaluation_path p)
{
    switch (p) {
    case evaluation_path::direct: return "direct";
    case evaluation_path::series_expansion: return "series";
    case evaluation_path::integral_form: return "integral";
    case evaluation_path::mixed: return "mixed";
    }
    return "?";
}

enum class summation_order { ascending, descending };

struct zero_sum_result
{
    double value = 0.0;
    double truncation_height = 0.0;
    std::size_t terms_used = 0;
    double tail_estimate = 0.0;
    evaluation_path path = evaluation_path::direct;
    std::size_t series_terms = 0;
    std::size_t direct_terms = 0;
    double max_imaginary_residue = 0.0;
    double crossover_discrepancy = 0.0;  // max relative series/direct gap on crossover terms
    bool precision_warning = false;
    bool degenerate = false;             // computed from an empty zero set
};

namespace detail {

/// Below the first ordinate there are no zeros, so an empty set is a
/// truncation at this height.
inline constexpr double empty_truncation_height = 14.0;

inline double truncation_height(zero_set const & zs)
{
    return zs.empty() ? empty_truncation_height : zs.height();
}

/// exp(i * gamma * log_x) with the phase reduced in extended precision.
inline cplx unit_phase(double gamma, long double log_x)
{
    constexpr long double two_pi = 2 * std::numbers::pi_v<long double>;
    long double ph = static_cast<long double>(gamma) * log_x;
    ph -= two_pi * std::nearbyint(ph / two_pi);
    return std::polar(1.0, static_cast<double>(ph));
}

inline double zero_density(double gamma)
{
    return std::log(gamma / (2.0 * std::numbers::pi)) / (2.0 * std::numbers::pi);
}

/// int_T^inf ln(g/2pi)/g^2 dg
inline double tail_moment2(double T)
{
    return (std::log(T / (2.0 * std::numbers::pi)) + 1.0) / T;
}

/// int_T^inf ln(g/2pi)/g^3 dg
inline double tail_moment3(double T)
{
    return (2.0 * std::log(T / (2.0 * std::numbers::pi)) + 1.0) / (4.0 * T * T);
}

/// Finishes a conjugate-paired sum from per-zero complex terms.
inline void reduce_terms(std::vector<cplx> const & terms, summation_order order, zero_sum_result & out)
{
    compensated_sum<double> re;
    compensated_sum<double> im;
    auto add = [&](cplx t) {
        re += 2.0 * t.real();
        im += t.imag() - t.imag();  // conjugate pairs cancel exactly
    };
    if (order == summation_order::ascending) {
        for (auto const & t : terms) {
            add(t);
        }
    } else {
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
            add(*it);
        }
    }
    out.value = re.value();
    out.max_imaginary_residue = std::abs(im.value());
}

} // namespace detail

/// sum over zeros of 2 Re[ M^{rho+1} / (rho (rho+1) ... (rho+depth)) ].
/// depth = 1 is the psi explicit-formula term; depth = 2 the long-interval Cesaro term.
inline zero_sum_result power_zero_sum(double M, zero_set const & zs, int depth, unsigned threads = 1,
                                      summation_order order = summation_order::ascending)
{
    if (!(M > 1.0)) {
        detail::throw_domain("power_zero_sum: M must exceed 1");
    }
    if (depth < 1) {
        detail::throw_domain("power_zero_sum: depth must be >= 1");
    }
    auto const gammas = zs.gammas();
    std::vector<cplx> terms(gammas.size());
    long double const log_m = std::log(static_cast<long double>(M));
    double const m32 = std::pow(M, 1.5);
    parallel_for(gammas.size(), threads, [&](std::size_t i) {
        cplx const rho(0.5, gammas[i]);
        cplx denom = rho;
        for (int d = 1; d <= depth; ++d) {
            denom *= rho + static_cast<double>(d);
        }
        terms[i] = m32 * detail::unit_phase(gammas[i], log_m) / denom;
    });
    zero_sum_result out;
    detail::reduce_terms(terms, order, out);
    out.truncation_height = detail::truncation_height(zs);
    out.terms_used = gammas.size();
    out.degenerate = zs.empty();
    double const T = out.truncation_height;
    // |term pair| <= 2 M^{3/2} / gamma^{depth+1}
    double const envelope = 2.0 * m32 / (2.0 * std::numbers::pi);
    out.tail_estimate = depth == 1 ? envelope * detail::tail_moment2(T)
                                   : envelope * detail::tail_moment3(T) / std::pow(T, depth - 2);
    out.path = evaluation_path::direct;
    out.direct_terms = gammas.size();
    return out;
}

/// sum over zeros of 2 Re[ M^{rho+1} / (rho (rho+1)) ]; the explicit-formula
/// counterpart of sum_{n <= M} (psi(n) - n).
inline zero_sum_result psi_zero_sum(double M, zero_set const & zs, unsigned threads = 1, bool allow_empty = false)
{
    if (!(M > 1.0)) {
        detail::throw_domain("psi_zero_sum: M must exceed 1");
    }
    if (zs.empty() && !allow_empty) {
        detail::throw_data("psi_zero_sum: empty zero set");
    }
    return power_zero_sum(M, zs, 1, threads);
}

/// Second difference of x^{rho+2} at (N-H, N, N+H) over rho (rho+1) (rho+2),
/// for one zero.
struct second_difference_term_value
{
    cplx value;
    bool series = false;
    double crossover_discrepancy = -1.0;  // >= 0 when both paths were evaluated
};

namespace detail {

inline constexpr double series_crossover = 0.5;

/// ((1+h)^s - 2 + (1-h)^s) via the even binomial series 2 sum_{k>=1} C(s,2k) h^{2k}.
inline cplx second_difference_series(cplx s, double h)
{
    double const h2 = h * h;
    cplx term = s * (s - 1.0) / 2.0 * h2;
    cplx sum = term;
    for (int k = 1; k < 400; ++k) {
        double const j = 2.0 * k;
        term *= (s - j) * (s - j - 1.0) / ((j + 1.0) * (j + 2.0)) * h2;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) {
            break;
        }
    }
    return 2.0 * sum;
}

/// (1+x)^s for real x > -1 and s = 5/2 + i gamma (or 3/2 + i gamma), through log1p.
inline cplx one_plus_pow(cplx s, double x)
{
    if (x <= -1.0) {
        return 0.0;
    }
    long double const l = std::log1p(static_cast<long double>(x));
    return std::exp(s.real() * static_cast<double>(l)) * unit_phase(s.imag(), l);
}

inline cplx second_difference_direct(cplx s, double h)
{
    return one_plus_pow(s, h) - 2.0 + one_plus_pow(s, -h);
}

} // namespace detail

inline second_difference_term_value second_difference_single(std::int64_t N, std::int64_t H, double gamma)
{
    cplx const rho(0.5, gamma);
    cplx const s = rho + 2.0;
    double const h = static_cast<double>(H) / static_cast<double>(N);
    double const scale = std::abs(s) * h;
    second_difference_term_value out;
    cplx bracket;
    if (scale < detail::series_crossover) {
        bracket = detail::second_difference_series(s, h);
        out.series = true;
    } else {
        bracket = detail::second_difference_direct(s, h);
    }
    if (scale >= 0.45 && scale <= 0.55) {
        cplx const a = detail::second_difference_series(s, h);
        cplx const b = detail::second_difference_direct(s, h);
        out.crossover_discrepancy = std::abs(a - b) / std::abs(a);
    }
    long double const log_n = std::log(static_cast<long double>(N));
    cplx const n_pow = std::pow(static_cast<double>(N), 2.5) * detail::unit_phase(gamma, log_n);
    out.value = n_pow * bracket / (rho * (rho + 1.0) * (rho + 2.0));
    return out;
}

namespace detail {

inline void validate_nh(std::int64_t N, std::int64_t H, char const * who)
{
    if (N < 2 || H < 1 || H > N) {
        throw_domain(std::string(who) + ": need N >= 2 and 1 <= H <= N");
    }
}

/// Tail of the second-difference sum above T from the per-pair envelope
/// min(2 H^2 (N+H)^{1/2} / g, 8 (N+H)^{5/2} / g^3) against the zero density.
inline double second_difference_tail(std::int64_t N, std::int64_t H, double T)
{
    double const nh = static_cast<double>(N + H);
    double const hh = static_cast<double>(H);
    double const a = 2.0 * hh * hh * std::sqrt(nh);
    double const b = 8.0 * std::pow(nh, 2.5);
    double const crossover = 2.0 * nh / hh;
    double const two_pi = 2.0 * std::numbers::pi;
    double tail = 0.0;
    double from = T;
    if (T < crossover) {
        double const l1 = std::log(crossover / two_pi);
        double const l0 = std::log(T / two_pi);
        tail += a / two_pi * 0.5 * (l1 * l1 - l0 * l0);
        from = crossover;
    }
    tail += b / two_pi * tail_moment3(from);
    return tail;
}

} // namespace detail

/// S = sum over zeros of 2 Re[ ((N+H)^{rho+2} - 2 N^{rho+2} + (N-H)^{rho+2}) / (rho (rho+1) (rho+2)) ].
/// Terms with |rho+2| H/N < 1/2 use the even binomial series, the rest direct
/// complex powers.
inline zero_sum_result second_difference_term(std::int64_t N, std::int64_t H, zero_set const & zs,
                                              unsigned threads = 1,
                                              summation_order order = summation_order::ascending)
{
    detail::validate_nh(N, H, "second_difference_term");
    auto const gammas = zs.gammas();
    std::vector<second_difference_term_value> parts(gammas.size());
    parallel_for(gammas.size(), threads, [&](std::size_t i) { parts[i] = second_difference_single(N, H, gammas[i]); });
    std::vector<cplx> terms(parts.size());
    zero_sum_result out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        terms[i] = parts[i].value;
        (parts[i].series ? out.series_terms : out.direct_terms) += 1;
        out.crossover_discrepancy = std::max(out.crossover_discrepancy, parts[i].crossover_discrepancy);
    }
    detail::reduce_terms(terms, order, out);
    out.precision_warning = out.crossover_discrepancy > 1e-6;
    out.truncation_height = detail::truncation_height(zs);
    out.terms_used = gammas.size();
    out.degenerate = zs.empty();
    out.tail_estimate = detail::second_difference_tail(N, H, out.truncation_height);
    out.path = out.series_terms == 0 ? evaluation_path::direct
               : out.direct_terms == 0 ? evaluation_path::series_expansion
                                       : evaluation_path::mixed;
    return out;
}

namespace detail {

struct panel_integral
{
    cplx value;
    double error = 0.0;
    double l1 = 0.0;
};

/// 31-point Gauss-Kronrod, without subdivision, on `panels` equal pieces
/// of [a, b]. The integrands oscillate at a known rate, so a fixed number of
/// panels per turn does the job; adaptive refinement would only chase
/// rounding noise in the phase where the integrand is tiny.
template <typename F>
panel_integral integrate_panels(F const & f, double a, double b, std::size_t panels)
{
    using boost::math::quadrature::gauss_kronrod;
    compensated_complex_sum<double> acc;
    panel_integral out;
    for (std::size_t k = 0; k < panels; ++k) {
        double const lo = a + (b - a) * static_cast<double>(k) / static_cast<double>(panels);
        double const hi = a + (b - a) * static_cast<double>(k + 1) / static_cast<double>(panels);
        double e = 0.0;
        double l = 0.0;
        acc += gauss_kronrod<double, 31>::integrate(f, lo, hi, 0, 0.0, &e, &l);
        out.error += e;
        out.l1 += l;
    }
    out.value = acc.value();
    return out;
}

/// `refine` panels per half turn of a phase that advances by `radians`.
inline std::size_t panels_for(double radians, std::size_t refine)
{
    return refine * static_cast<std::size_t>(std::clamp(std::ceil(radians / std::numbers::pi), 1.0, 1e6));
}

/// int_0^H ((1 + t/N)^{s1} - (1 - t/N)^{s1}) dt for s1 = 3/2 + i gamma.
/// Up to t = N/2 the two powers are integrated together, which keeps the
/// cancellation for small H/N inside the integrand. Beyond N/2 the second
/// power oscillates without bound as t -> N, so it is integrated in
/// v = ln(1 - t/N), where it becomes N e^{v (s1 + 1)} with constant frequency;
/// the range stops where that modulus is below 1e-17 N.
inline panel_integral second_difference_inner(std::int64_t N, std::int64_t H, cplx s1, std::size_t refine)
{
    double const nd = static_cast<double>(N);
    double const hd = static_cast<double>(H);
    double const gamma = s1.imag();
    double const split = std::min(hd, 0.5 * nd);
    auto both = [&](double t) {
        double const x = t / nd;
        return one_plus_pow(s1, x) - one_plus_pow(s1, -x);
    };
    double const h0 = split / nd;
    auto out = integrate_panels(both, 0.0, split, panels_for(gamma * (std::log1p(h0) - std::log1p(-h0)), refine));
    if (hd <= split) {
        return out;
    }
    auto plus = [&](double t) { return one_plus_pow(s1, t / nd); };
    auto const p = integrate_panels(plus, split, hd, panels_for(gamma * std::log((nd + hd) / (nd + split)), refine));
    cplx const s2 = s1 + 1.0;
    auto minus = [&](double v) { return nd * std::exp(s2.real() * v) * detail::unit_phase(gamma, v); };
    double const v_hi = std::log(0.5);
    double const v_lo = std::max(H < N ? std::log1p(-hd / nd) : -INFINITY, std::log(1e-17) / s2.real());
    auto const m = integrate_panels(minus, v_lo, v_hi, panels_for(gamma * (v_hi - v_lo), refine));
    out.value += p.value - m.value;
    out.error += p.error + m.error;
    out.l1 += p.l1 + m.l1;
    return out;
}

} // namespace detail

/// The same S through int_0^H ((N+t)^{rho+1} - (N-t)^{rho+1}) dt / (rho (rho+1)),
/// integrated per zero by Gauss-Kronrod panels that follow the oscillation.
/// The panel count doubles until either the Kronrod error estimate or the
/// change from the previous count is below rel_tol relative to the value.
/// With thousands of panels the Kronrod estimate bottoms out at rounding
/// noise in the integral of the modulus, which can exceed the value itself.
inline zero_sum_result second_difference_term_integral(std::int64_t N, std::int64_t H, zero_set const & zs,
                                                       unsigned threads = 1, double rel_tol = 1e-10)
{
    detail::validate_nh(N, H, "second_difference_term_integral");
    auto const gammas = zs.gammas();
    std::vector<cplx> terms(gammas.size());
    double const nd = static_cast<double>(N);
    long double const log_n = std::log(static_cast<long double>(N));
    parallel_for(gammas.size(), threads, [&](std::size_t i) {
        cplx const rho(0.5, gammas[i]);
        cplx const s1 = rho + 1.0;
        auto inner = detail::second_difference_inner(N, H, s1, 2);
        double change = INFINITY;
        for (std::size_t refine = 4; refine <= 32 && std::min(inner.error, change) > rel_tol * std::abs(inner.value);
             refine *= 2) {
            auto const next = detail::second_difference_inner(N, H, s1, refine);
            change = std::abs(next.value - inner.value);
            inner = next;
        }
        if (!(std::min(inner.error, change) <= rel_tol * std::abs(inner.value))) {
            throw convergence_error("second_difference_term_integral: quadrature did not converge for gamma = "
                                    + std::to_string(gammas[i]));
        }
        // integral in t of the bracket, i.e. N times the integral in x
        cplx const n_pow = std::pow(nd, 1.5) * detail::unit_phase(gammas[i], log_n);
        terms[i] = n_pow * inner.value / (rho * s1);
    });
    zero_sum_result out;
    detail::reduce_terms(terms, summation_order::ascending, out);
    out.truncation_height = detail::truncation_height(zs);
    out.terms_used = gammas.size();
    out.degenerate = zs.empty();
    out.tail_estimate = detail::second_difference_tail(N, H, out.truncation_height);
    out.path = evaluation_path::integral_form;
    return out;
}

/// D = sum_{n=N-H}^{N+H} t_H(n-N)(psi(n) - n) + S, reported as |D| / (H N).
/// `psi_at` supplies psi(n); passing the identity isolates the zero term.
inline verification_report pesato_identity_check(std::int64_t N, std::int64_t H, zero_set const & zs,
                                                 std::function<double(std::int64_t)> const & psi_at,
                                                 tolerances const & tol = {}, unsigned threads = 1)
{
    if (N < 2 || H < 2 || H > N) {
        detail::throw_domain("pesato_identity_check: need 2 <= H <= N");
    }
    compensated_sum<double> acc;
    for (std::int64_t n = N - H; n <= N + H; ++n) {
        acc += static_cast<double>(cesaro_weight(H, n - N)) * (psi_at(n) - static_cast<double>(n));
    }
    auto const s = second_difference_term(N, H, zs, threads);
    verification_report r;
    r.check = "lemma:pesato";
    r.N = N;
    r.H = H;
    r.y = H;
    r.zero_height = s.truncation_height;
    r.zeros_used = s.terms_used;
    r.lhs = acc.value();
    r.zero_term = -s.value;
    r.observed_error = r.lhs - r.zero_term;
    r.bound = static_cast<double>(H) * static_cast<double>(N);
    r.ratio = std::abs(r.observed_error) / r.bound;
    r.threshold = tol.pesato_ratio;
    r.pass = r.ratio <= tol.pesato_ratio;
    r.notes.push_back("zero-sum tail estimate " + fmt_real(s.tail_estimate));
    return r;
}

inline verification_report pesato_identity_check(std::int64_t N, std::int64_t H, zero_set const & zs,
                                                 psi_table const & psi, tolerances const & tol = {},
                                                 unsigned threads = 1)
{
    if (psi.hi() < static_cast<std::uint64_t>(N + H)) {
        detail::throw_data("pesato_identity_check: psi cache does not reach N + H");
    }
    return pesato_identity_check(
        N, H, zs, [&psi](std::int64_t n) { return psi(static_cast<std::uint64_t>(n)); }, tol, threads);
}

/// |S| / (H^2 N^{1/2} (ln N)^2 + H N).
inline verification_report order_of_magnitude_check(std::int64_t N, std::int64_t H, zero_set const & zs,
                                                    tolerances const & tol = {}, unsigned threads = 1)
{
    detail::validate_nh(N, H, "order_of_magnitude_check");
    auto const s = second_difference_term(N, H, zs, threads);
    double const nd = static_cast<double>(N);
    double const hd = static_cast<double>(H);
    double const ln = std::log(nd);
    verification_report r;
    r.check = "lemma:order";
    r.N = N;
    r.H = H;
    r.y = H;
    r.zero_height = s.truncation_height;
    r.zeros_used = s.terms_used;
    r.zero_term = s.value;
    r.observed_error = s.value;
    r.bound = hd * hd * std::sqrt(nd) * ln * ln + hd * nd;
    r.ratio = std::abs(s.value) / r.bound;
    r.threshold = tol.order_ratio;
    r.pass = r.ratio <= tol.order_ratio;
    r.notes.push_back("unconditional bound not asserted: indistinguishable from the conditional one at this scale");
    return r;
}

} // namespace gbx
