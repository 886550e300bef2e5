#pragma once

/// @file verify.hpp
/// @brief Theorem-level checks: both sides of the short-interval explicit
/// formula, the exact averaged statements, the long-interval formulas, and a
/// campaign harness that runs them over (N, H) grids with trend regressions.

#include "gbx/check.hpp"
#include "gbx/error.hpp"
#include "gbx/format.hpp"
#include "gbx/goldbach.hpp"
#include "gbx/lambda.hpp"
#include "gbx/summation.hpp"
#include "gbx/zero_sums.hpp"
#include "gbx/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace gbx {

namespace detail {

inline verification_report make_row(char const * check, std::int64_t N, std::int64_t H, std::int64_t y)
{
    verification_report r;
    r.check = check;
    r.N = N;
    r.H = H;
    r.y = y;
    return r;
}

inline void finish(verification_report & r, double threshold)
{
    r.ratio = r.bound > 0.0 ? std::abs(r.observed_error) / r.bound : 0.0;
    r.threshold = threshold;
    r.pass = r.error.empty() && r.ratio <= threshold;
}

} // namespace detail

/// N (ln 2N/H)^2 + H (ln N)^2 ln 2H
inline double main_bound(std::int64_t N, std::int64_t H)
{
    double const nd = static_cast<double>(N);
    double const hd = static_cast<double>(H);
    double const a = std::log(2.0 * nd / hd);
    double const ln = std::log(nd);
    return nd * a * a + hd * ln * ln * std::log(2.0 * hd);
}

/// Cesaro-weighted R sum against HN - (2/H) S.
inline verification_report verify_main(window_spec const & spec, r_window const & rwin, zero_set const & zs,
                                       tolerances const & tol = {}, unsigned threads = 1)
{
    spec.validate();
    auto r = detail::make_row("main", spec.N, spec.H, spec.H);
    auto const s = second_difference_term(spec.N, spec.H, zs, threads);
    double const hd = static_cast<double>(spec.H);
    r.zero_height = s.truncation_height;
    r.zeros_used = s.terms_used;
    r.lhs = cesaro_lhs_main(spec, rwin);
    r.main_term = hd * static_cast<double>(spec.N);
    r.zero_term = -2.0 / hd * s.value;
    r.observed_error = r.lhs - (r.main_term + r.zero_term);
    r.bound = main_bound(spec.N, spec.H);
    r.ablation = zs.empty();
    detail::finish(r, tol.main_ratio);
    r.notes.push_back("zero-term tail band " + fmt_real(2.0 / hd * s.tail_estimate));
    if (s.precision_warning) {
        r.notes.push_back("series/direct crossover discrepancy " + fmt_real(s.crossover_discrepancy));
    }
    if (spec.H == spec.N) {
        r.notes.push_back("H = N: the long-interval Cesaro regime");
    }
    return r;
}

inline verification_report verify_main(std::int64_t N, std::int64_t H, lambda_window const & window,
                                       zero_set const & zs, tolerances const & tol = {}, unsigned threads = 1)
{
    auto const spec = make_spec(N, H);
    return verify_main(spec, r_window_fft(spec, window), zs, tol, threads);
}

/// N (ln N)^2 ln 2H
inline double average_max_bound(std::int64_t N, std::int64_t H)
{
    double const ln = std::log(static_cast<double>(N));
    return static_cast<double>(N) * ln * ln * std::log(2.0 * static_cast<double>(H));
}

/// N (ln 2N/H)^2
inline double average_full_bound(std::int64_t N, std::int64_t H)
{
    double const a = std::log(2.0 * static_cast<double>(N) / static_cast<double>(H));
    return static_cast<double>(N) * a * a;
}

/// The two averaged statements from the per-n summands e^{-n/N}(R - (2 psi - n)) t_H / H:
/// the maximum over y in [-H, H) of the partial sums, and the full sum (y = H).
inline std::pair<verification_report, verification_report> verify_average(window_spec const & spec,
                                                                           std::span<double const> summands,
                                                                           tolerances const & tol = {})
{
    spec.validate();
    if (summands.size() != static_cast<std::size_t>(2 * spec.H + 1)) {
        detail::throw_data("verify_average: need 2H + 1 summands");
    }
    auto const best = max_over_y(spec, summands);
    auto a = detail::make_row("average:max", spec.N, spec.H, best.y);
    a.lhs = best.value;
    a.observed_error = best.value;
    a.bound = average_max_bound(spec.N, spec.H);
    detail::finish(a, tol.average_max_ratio);

    compensated_sum<double> acc;
    for (double v : summands) {
        acc += v;
    }
    auto b = detail::make_row("average:full", spec.N, spec.H, spec.H);
    b.lhs = acc.value();
    b.observed_error = acc.value();
    b.bound = average_full_bound(spec.N, spec.H);
    detail::finish(b, tol.average_full_ratio);
    if (spec.H == spec.N) {
        b.notes.push_back("H = N: bound carries the ln 2 factor");
    }
    return {a, b};
}

inline std::pair<verification_report, verification_report> verify_average(window_spec const & spec,
                                                                           r_window const & rwin,
                                                                           psi_table const & psi,
                                                                           tolerances const & tol = {})
{
    auto const s = average_summands(spec, rwin, psi);
    return verify_average(spec, s, tol);
}

inline std::pair<verification_report, verification_report> verify_average(std::int64_t N, std::int64_t H,
                                                                           lambda_window const & window,
                                                                           tolerances const & tol = {})
{
    auto const spec = make_spec(N, H);
    return verify_average(spec, r_window_fft(spec, window), psi_table(window), tol);
}

/// Links the two theorems: with d_n = (R - 2 psi + n) t_H / H the unweighted
/// sum B = lhs_main - HN - (2/H) sum t_H (psi - n) and the weighted sum
/// A = sum e^{-n/N} d_n obey the Abel identity
///   A = e^{-(N+H)/N} B + sum_{n < N+H} (e^{-n/N} - e^{-(n+1)/N}) D(n),
/// D the partial sums of d. Reports A - e^{-(N+H)/N} B against the exact
/// removal bound (e^{-(N-H)/N} - e^{-(N+H)/N}) max |D|.
inline verification_report chain_consistency_check(window_spec const & spec, r_window const & rwin,
                                                   psi_table const & psi, tolerances const & tol = {})
{
    spec.validate();
    double const nd = static_cast<double>(spec.N);
    double const hd = static_cast<double>(spec.H);
    compensated_sum<double> weighted_psi;
    std::vector<double> d;
    for (std::int64_t n = spec.first(); n <= spec.last(); ++n) {
        double const w = static_cast<double>(cesaro_weight(spec.H, n - spec.N));
        double const p = psi(static_cast<std::uint64_t>(n));
        weighted_psi += w * (p - static_cast<double>(n));
        d.push_back((rwin(n) - 2.0 * p + static_cast<double>(n)) * w / hd);
    }
    double const lhs_main = cesaro_lhs_main(spec, rwin);
    double const moment = static_cast<double>(weighted_first_moment(spec.N, spec.H));
    double const b = lhs_main - moment / hd - 2.0 / hd * weighted_psi.value();

    compensated_sum<double> a;
    compensated_sum<double> partial;
    compensated_sum<double> abel;
    double max_d = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double const n = static_cast<double>(spec.first() + static_cast<std::int64_t>(i));
        a += std::exp(-n / nd) * d[i];
        partial += d[i];
        if (i + 1 < d.size()) {
            abel += (std::exp(-n / nd) - std::exp(-(n + 1.0) / nd)) * partial.value();
            max_d = std::max(max_d, std::abs(partial.value()));
        }
    }
    double const tail_factor = std::exp(-static_cast<double>(spec.last()) / nd);
    double const identity_gap = a.value() - (tail_factor * b + abel.value());
    auto r = detail::make_row("chain", spec.N, spec.H, spec.H);
    r.lhs = a.value();
    r.main_term = tail_factor * b;
    r.zero_term = 0.0;
    r.observed_error = a.value() - tail_factor * b;
    r.bound = (std::exp(-static_cast<double>(spec.first()) / nd) - tail_factor) * max_d;
    double const scale = std::max({std::abs(a.value()), std::abs(b), hd * nd * 1e-12, 1.0});
    bool const identity_ok = std::abs(identity_gap) <= 1e-9 * scale;
    r.ratio = r.bound > 0.0 ? std::abs(r.observed_error) / r.bound : 0.0;
    r.threshold = 1.0 + 1e-9;
    r.pass = identity_ok && (std::abs(r.observed_error) <= r.bound + 1e-9 * scale);
    r.notes.push_back("Abel identity gap " + fmt_real(identity_gap));
    r.notes.push_back("unweighted sum " + fmt_real(b));
    (void)tol;
    return r;
}

/// sum_{n <= M} (psi(n) - n) against -psi_zero_sum(M), relative to M.
inline verification_report verify_psi_formula(std::int64_t M, psi_table const & psi, zero_set const & zs,
                                              tolerances const & tol = {}, unsigned threads = 1)
{
    if (M < 2) {
        detail::throw_domain("verify_psi_formula: M must be >= 2");
    }
    if (psi.hi() < static_cast<std::uint64_t>(M)) {
        detail::throw_data("verify_psi_formula: psi cache does not reach M");
    }
    compensated_sum<double> acc;
    for (std::int64_t n = 1; n <= M; ++n) {
        acc += psi(static_cast<std::uint64_t>(n)) - static_cast<double>(n);
    }
    auto const z = power_zero_sum(static_cast<double>(M), zs, 1, threads);
    auto r = detail::make_row("lemma:psi", M, 0, 0);
    r.zero_height = z.truncation_height;
    r.zeros_used = z.terms_used;
    r.lhs = acc.value();
    r.zero_term = -z.value;
    r.observed_error = r.lhs - r.zero_term;
    r.bound = static_cast<double>(M);
    r.ablation = zs.empty();
    detail::finish(r, tol.psi_ratio);
    r.notes.push_back("zero-sum tail estimate " + fmt_real(z.tail_estimate));
    return r;
}

/// sum_{n <= N} R(n) against N^2/2 - 2 sum N^{rho+1}/(rho(rho+1)), scale N (ln N)^3,
/// and sum_{n <= N} R(n)(1 - n/N) against N^2/6 - 2 sum N^{rho+1}/(rho(rho+1)(rho+2)), scale N.
inline std::pair<verification_report, verification_report> verify_long_interval(std::int64_t N,
                                                                                lambda_window const & window,
                                                                                zero_set const & zs,
                                                                                tolerances const & tol = {},
                                                                                unsigned threads = 1)
{
    if (N < 4) {
        detail::throw_domain("verify_long_interval: N must be >= 4");
    }
    auto const r = r_prefix_table(N, window);
    double const nd = static_cast<double>(N);
    compensated_sum<double> plain;
    compensated_sum<double> cesaro;
    for (std::int64_t n = 2; n <= N; ++n) {
        double const v = r[static_cast<std::size_t>(n)];
        plain += v;
        cesaro += v * (1.0 - static_cast<double>(n) / nd);
    }
    double const ln = std::log(nd);

    auto const z1 = power_zero_sum(nd, zs, 1, threads);
    auto a = detail::make_row("long:rh", N, N, 0);
    a.zero_height = z1.truncation_height;
    a.zeros_used = z1.terms_used;
    a.lhs = plain.value();
    a.main_term = nd * nd / 2.0;
    a.zero_term = -2.0 * z1.value;
    a.observed_error = a.lhs - (a.main_term + a.zero_term);
    a.bound = nd * ln * ln * ln;
    a.ablation = zs.empty();
    detail::finish(a, tol.long_rh_ratio);

    auto const z2 = power_zero_sum(nd, zs, 2, threads);
    auto b = detail::make_row("long:cesaro", N, N, 0);
    b.zero_height = z2.truncation_height;
    b.zeros_used = z2.terms_used;
    b.lhs = cesaro.value();
    b.main_term = nd * nd / 6.0;
    b.zero_term = -2.0 * z2.value;
    b.observed_error = b.lhs - (b.main_term + b.zero_term);
    b.bound = nd;
    b.ablation = zs.empty();
    detail::finish(b, tol.long_gy_ratio);
    return {a, b};
}

/// Least-squares slope of y against x; nullopt for fewer than two distinct x.
inline std::optional<double> regression_slope(std::span<double const> x, std::span<double const> y)
{
    if (x.size() != y.size() || x.size() < 2) {
        return std::nullopt;
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) {
        return std::nullopt;
    }
    return sxy / sxx;
}

/// H as a function of N.
enum class h_family { sqrt, two_thirds, tenth, full };

inline char const * to_string(h_family f)
{
    switch (f) {
    case h_family::sqrt: return "sqrt";
    case h_family::two_thirds: return "pow2_3";
    case h_family::tenth: return "tenth";
    case h_family::full: return "full";
    }
    return "?";
}

inline std::optional<h_family> parse_family(std::string_view s)
{
    for (auto f : {h_family::sqrt, h_family::two_thirds, h_family::tenth, h_family::full}) {
        if (s == to_string(f)) {
            return f;
        }
    }
    return std::nullopt;
}

/// floor(N^{1/2}), floor(N^{2/3}), floor(N/10), N; exact integer arithmetic.
inline std::int64_t family_h(h_family f, std::int64_t N)
{
    switch (f) {
    case h_family::sqrt: return static_cast<std::int64_t>(detail::isqrt(static_cast<std::uint64_t>(N)));
    case h_family::two_thirds: {
        auto const n2 = static_cast<__int128>(N) * N;
        auto h = static_cast<std::int64_t>(std::llround(std::cbrt(static_cast<double>(n2))));
        auto cube = [](std::int64_t v) { return static_cast<__int128>(v) * v * v; };
        while (h > 0 && cube(h) > n2) {
            --h;
        }
        while (cube(h + 1) <= n2) {
            ++h;
        }
        return h;
    }
    case h_family::tenth: return N / 10;
    case h_family::full: return N;
    }
    return 1;
}

struct campaign_point
{
    std::int64_t N = 0;
    std::int64_t H = 0;
    std::string family;   // empty for explicit pairs
};

struct campaign_config
{
    std::vector<std::int64_t> n_values;
    std::vector<h_family> families;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    std::vector<std::string> checks{"main", "average", "pesato", "order", "chain"};
    bool ablation = false;        // add verify_main rows with no zeros
    tolerances tol = tolerances::calibrated();
    unsigned threads = 1;
};

inline std::vector<campaign_point> campaign_points(campaign_config const & cfg)
{
    std::vector<campaign_point> out;
    for (auto f : cfg.families) {
        for (auto n : cfg.n_values) {
            out.push_back({n, family_h(f, n), to_string(f)});
        }
    }
    for (auto [n, h] : cfg.pairs) {
        out.push_back({n, h, ""});
    }
    return out;
}

struct trend_summary
{
    std::string check;
    std::string family;
    std::size_t points = 0;
    double ratio_slope = 0.0;       // ratio against ln N
    double error_slope = 0.0;       // ln |observed error| against ln N
    double bound_slope = 0.0;       // ln bound against ln N
    double ratio_tolerance = 0.0;
    double growth_factor = 0.0;
    bool pass = false;
};

struct campaign_report
{
    std::vector<verification_report> rows;
    std::vector<trend_summary> trends;
    tolerances tol;
    unsigned threads = 1;
    std::size_t zeros = 0;
    double zero_height = 0.0;

    /// Every non-ablation row and every trend passes.
    bool pass() const
    {
        for (auto const & r : rows) {
            if (!r.ablation && !r.pass) {
                return false;
            }
        }
        for (auto const & t : trends) {
            if (!t.pass) {
                return false;
            }
        }
        return true;
    }
};

namespace detail {

inline std::vector<std::string> const & known_checks()
{
    static std::vector<std::string> const names{"main", "average", "pesato", "order", "chain"};
    return names;
}

inline double slope_tolerance(std::string const & check, tolerances const & tol)
{
    return check == "lemma:order" ? tol.order_slope : tol.slope;
}

} // namespace detail

/// Trend rows per (check, family): slope of ratio against ln N must stay
/// below the slope tolerance, and the log-log slope of |error| at most
/// growth_factor times that of the bound.
inline std::vector<trend_summary> campaign_trends(std::vector<verification_report> const & rows,
                                                  tolerances const & tol)
{
    std::map<std::pair<std::string, std::string>, std::vector<verification_report const *>> groups;
    for (auto const & r : rows) {
        if (!r.family.empty() && !r.ablation && r.error.empty() && r.check != "chain") {
            groups[{r.check, r.family}].push_back(&r);
        }
    }
    std::vector<trend_summary> out;
    for (auto const & [key, members] : groups) {
        std::vector<double> ln_n;
        std::vector<double> ratio;
        std::vector<double> ln_err;
        std::vector<double> ln_bound;
        for (auto const * r : members) {
            ln_n.push_back(std::log(static_cast<double>(r->N)));
            ratio.push_back(r->ratio);
            ln_err.push_back(std::log(std::max(std::abs(r->observed_error), 1e-300)));
            ln_bound.push_back(std::log(r->bound));
        }
        auto const rs = regression_slope(ln_n, ratio);
        if (!rs) {
            continue;
        }
        trend_summary t;
        t.check = key.first;
        t.family = key.second;
        t.points = members.size();
        t.ratio_slope = *rs;
        t.error_slope = *regression_slope(ln_n, ln_err);
        t.bound_slope = *regression_slope(ln_n, ln_bound);
        t.ratio_tolerance = detail::slope_tolerance(t.check, tol);
        t.growth_factor = tol.growth_factor;
        t.pass = t.ratio_slope <= t.ratio_tolerance && t.error_slope <= t.growth_factor * t.bound_slope;
        out.push_back(t);
    }
    return out;
}

/// Runs the configured checks over every campaign point. Rows that cannot be
/// computed carry the error text and do not stop the campaign. Output order
/// is by (check, N, H, family).
inline campaign_report grid_campaign(campaign_config const & cfg, lambda_window const & window,
                                     zero_set const & zs)
{
    for (auto const & c : cfg.checks) {
        if (std::find(detail::known_checks().begin(), detail::known_checks().end(), c)
            == detail::known_checks().end()) {
            detail::throw_domain("grid_campaign: unknown check '" + c + "'");
        }
    }
    auto wants = [&](char const * c) {
        return std::find(cfg.checks.begin(), cfg.checks.end(), c) != cfg.checks.end();
    };
    campaign_report rep;
    rep.tol = cfg.tol;
    rep.threads = cfg.threads;
    rep.zeros = zs.size();
    rep.zero_height = zs.height();
    auto const points = campaign_points(cfg);
    std::optional<psi_table> psi;
    if (!points.empty() && (wants("average") || wants("pesato") || wants("chain"))) {
        psi.emplace(window);
    }
    zero_set const none;
    for (auto const & p : points) {
        auto failed = [&](char const * check, std::string const & what) {
            auto r = detail::make_row(check, p.N, p.H, p.H);
            r.family = p.family;
            r.error = what;
            rep.rows.push_back(std::move(r));
        };
        std::optional<r_window> rwin;
        window_spec spec;
        try {
            spec = make_spec(p.N, p.H);
            if (wants("main") || wants("average") || wants("chain")) {
                rwin = r_window_fft(spec, window);
            }
        } catch (std::exception const & e) {
            for (auto const & c : cfg.checks) {
                failed(c.c_str(), e.what());
            }
            continue;
        }
        auto run = [&](char const * check, auto && body) {
            try {
                for (auto r : body()) {
                    r.family = p.family;
                    rep.rows.push_back(std::move(r));
                }
            } catch (std::exception const & e) {
                failed(check, e.what());
            }
        };
        if (wants("main")) {
            run("main", [&] { return std::vector{verify_main(spec, *rwin, zs, cfg.tol, cfg.threads)}; });
            if (cfg.ablation) {
                run("main", [&] { return std::vector{verify_main(spec, *rwin, none, cfg.tol, cfg.threads)}; });
            }
        }
        if (wants("average")) {
            run("average", [&] {
                auto [a, b] = verify_average(spec, *rwin, *psi, cfg.tol);
                return std::vector{a, b};
            });
        }
        if (wants("pesato")) {
            run("lemma:pesato",
                [&] { return std::vector{pesato_identity_check(p.N, p.H, zs, *psi, cfg.tol, cfg.threads)}; });
        }
        if (wants("order")) {
            run("lemma:order",
                [&] { return std::vector{order_of_magnitude_check(p.N, p.H, zs, cfg.tol, cfg.threads)}; });
        }
        if (wants("chain")) {
            run("chain", [&] { return std::vector{chain_consistency_check(spec, *rwin, *psi, cfg.tol)}; });
        }
    }
    std::stable_sort(rep.rows.begin(), rep.rows.end(), [](auto const & a, auto const & b) {
        return std::tie(a.check, a.N, a.H, a.family, a.ablation) < std::tie(b.check, b.N, b.H, b.family, b.ablation);
    });
    rep.trends = campaign_trends(rep.rows, cfg.tol);
    return rep;
}

} // namespace gbx
