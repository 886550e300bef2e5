#pragma once

/// @file zeta.hpp
/// @brief Ordinates of nontrivial zeta zeros: table loading, sign-change zero
/// finding on the Hardy Z function, and zero-counting consistency checks.

#include "gbx/error.hpp"
#include "gbx/parallel.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gbx {

/// Zeros read from a text table; `precision` is the half-unit of the last
/// printed decimal of the least precise line.
struct file_table_source
{
    std::string path;
    double precision = 0.0;
};

/// Zeros located by this library; `method` names the evaluator of Z(t).
struct computed_source
{
    std::string method;
};

using zero_source = std::variant<file_table_source, computed_source>;

inline std::string describe(zero_source const & src)
{
    if (auto const * f = std::get_if<file_table_source>(&src)) {
        return "file:" + f->path;
    }
    return "computed:" + std::get<computed_source>(src).method;
}

/// Ascending positive ordinates gamma of zeros rho = 1/2 + i gamma. Conjugates
/// are implicit. An empty set is allowed and is used for ablation runs.
class zero_set
{
public:
    zero_set() = default;
    zero_set(std::vector<double> gammas, zero_source source)
        : gammas_(std::move(gammas)), source_(std::move(source))
    {
        for (std::size_t i = 0; i < gammas_.size(); ++i) {
            if (!(gammas_[i] > 0.0) || !std::isfinite(gammas_[i])) {
                detail::throw_data("zero_set: ordinate #" + std::to_string(i + 1) + " is not a positive finite number");
            }
            if (i > 0 && !(gammas_[i] > gammas_[i - 1])) {
                detail::throw_data("zero_set: ordinates not strictly ascending at #" + std::to_string(i + 1));
            }
        }
        if (!gammas_.empty() && !(gammas_.front() > 14.0)) {
            detail::throw_data("zero_set: first ordinate must exceed 14");
        }
    }

    std::span<double const> gammas() const { return gammas_; }
    std::size_t size() const { return gammas_.size(); }
    bool empty() const { return gammas_.empty(); }
    double height() const { return gammas_.empty() ? 0.0 : gammas_.back(); }
    zero_source const & source() const { return source_; }

    /// Number of ordinates <= T.
    std::size_t count_below(double T) const
    {
        return static_cast<std::size_t>(std::upper_bound(gammas_.begin(), gammas_.end(), T) - gammas_.begin());
    }

    zero_set first(std::size_t n) const
    {
        n = std::min(n, gammas_.size());
        return zero_set(std::vector<double>(gammas_.begin(), gammas_.begin() + static_cast<std::ptrdiff_t>(n)), source_);
    }

    zero_set below(double T) const { return first(count_below(T)); }

private:
    std::vector<double> gammas_;
    zero_source source_ = computed_source{"empty"};
};

/// Reads a zero table: UTF-8 text, one decimal ordinate per line, `#` comment
/// lines and blank lines ignored, strictly ascending. Reads at most max_count
/// ordinates (0 means all).
inline zero_set load_zeros(std::string const & path, std::size_t max_count = 0)
{
    std::ifstream in(path);
    if (!in) {
        detail::throw_data("load_zeros: cannot open " + path);
    }
    std::vector<double> gammas;
    int min_decimals = 99;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view v(line);
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) {
            v.remove_prefix(1);
        }
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) {
            v.remove_suffix(1);
        }
        if (v.empty() || v.front() == '#') {
            continue;
        }
        double g = 0.0;
        auto const [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), g);
        if (ec != std::errc{} || ptr != v.data() + v.size()) {
            detail::throw_data("load_zeros: " + path + ":" + std::to_string(line_no) + ": cannot parse '"
                               + std::string(v) + "'");
        }
        if (!(g > 0.0)) {
            detail::throw_data("load_zeros: " + path + ":" + std::to_string(line_no) + ": non-positive ordinate");
        }
        if (!gammas.empty() && !(g > gammas.back())) {
            detail::throw_data("load_zeros: " + path + ":" + std::to_string(line_no)
                               + ": ordering violation (ordinates must be strictly ascending)");
        }
        auto const dot = v.find('.');
        int const decimals = dot == std::string_view::npos ? 0 : static_cast<int>(v.size() - dot - 1);
        min_decimals = std::min(min_decimals, decimals);
        gammas.push_back(g);
        if (max_count != 0 && gammas.size() == max_count) {
            break;
        }
    }
    if (gammas.empty()) {
        detail::throw_data("load_zeros: " + path + " contains no ordinates");
    }
    double const precision = 0.5 * std::pow(10.0, -min_decimals);
    return zero_set(std::move(gammas), file_table_source{path, precision});
}

/// Writes ordinates one per line with the given number of decimals.
inline void write_zeros(std::string const & path, zero_set const & zs, int decimals = 9)
{
    std::ofstream out(path);
    if (!out) {
        detail::throw_data("write_zeros: cannot open " + path);
    }
    out << "# ordinates of nontrivial zeta zeros, " << describe(zs.source()) << '\n';
    char buf[64];
    for (double g : zs.gammas()) {
        std::snprintf(buf, sizeof buf, "%.*f\n", decimals, g);
        out << buf;
    }
}

/// Riemann-Siegel theta via its asymptotic expansion; accurate to ~1e-12 for t >= 10.
inline long double rs_theta(long double t)
{
    constexpr long double pi = std::numbers::pi_v<long double>;
    long double const inv = 1.0L / t;
    long double const inv2 = inv * inv;
    long double series = inv * (1.0L / 48 + inv2 * (7.0L / 5760 + inv2 * (31.0L / 80640 + inv2 * (127.0L / 430080 + inv2 * (511.0L / 1216512)))));
    return t / 2 * std::log(t / (2 * pi)) - t / 2 - pi / 8 + series;
}

/// Hardy Z(t) = e^{i theta(t)} zeta(1/2 + i t) with zeta from Euler-Maclaurin
/// summation. Intended for 10 <= t <= 500.
inline double hardy_z_em(double t)
{
    using cplx = std::complex<long double>;
    constexpr int corrections = 30;
    long double const tl = t;
    cplx const s(0.5L, tl);
    long double const n_cut = std::max<long double>(20.0L, std::ceil(tl / std::numbers::pi_v<long double>) + 10.0L);
    auto const n_max = static_cast<int>(n_cut);

    auto n_pow_minus_s = [&](long double n) {
        long double const ln = std::log(n);
        return std::polar(1.0L / std::sqrt(n), -tl * ln);
    };
    cplx sum = 0;
    for (int n = 1; n < n_max; ++n) {
        sum += n_pow_minus_s(n);
    }
    cplx const nm = n_pow_minus_s(n_cut);
    sum += nm * n_cut / (s - 1.0L);
    sum += nm / 2.0L;
    // Bernoulli corrections: B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    cplx rising = s;
    cplx npow = nm / n_cut;
    for (int k = 1; k <= corrections; ++k) {
        long double const coeff = boost::math::bernoulli_b2n<long double>(k)
                                  / boost::math::factorial<long double>(static_cast<unsigned>(2 * k));
        sum += coeff * rising * npow;
        rising *= (s + static_cast<long double>(2 * k - 1)) * (s + static_cast<long double>(2 * k));
        npow /= n_cut * n_cut;
    }
    long double const th = rs_theta(tl);
    return static_cast<double>((std::polar(1.0L, th) * sum).real());
}

namespace detail {

/// Coefficient polynomials of the Riemann-Siegel remainder C_0..C_4 as Taylor
/// series in u = p - 1/2. Built once from Cauchy-integral Taylor coefficients of
/// Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p), which is entire.
class rs_coefficients
{
public:
    static constexpr int terms = 64;
    static constexpr int orders = 5;

    static rs_coefficients const & instance()
    {
        static rs_coefficients const c;
        return c;
    }

    /// C_k(p) for p in [0, 1).
    long double eval(int k, long double p) const
    {
        long double const u = p - 0.5L;
        long double acc = 0.0L;
        for (int j = terms - 1; j >= 0; --j) {
            acc = acc * u + poly_[k][j];
        }
        return acc;
    }

private:
    rs_coefficients()
    {
        using cplx = std::complex<long double>;
        constexpr long double pi = std::numbers::pi_v<long double>;
        constexpr int samples = 512;
        constexpr long double radius = 1.0L;
        std::array<long double, terms> psi{};
        std::vector<cplx> values(samples);
        for (int m = 0; m < samples; ++m) {
            cplx const u = std::polar(radius, 2 * pi * m / samples);
            // Psi in terms of u: -cos(2 pi u^2 - 5 pi / 8) / cos(2 pi u)
            values[m] = -std::cos(2 * pi * u * u - 5 * pi / 8) / std::cos(2 * pi * u);
        }
        for (int j = 0; j < terms; ++j) {
            cplx acc = 0;
            for (int m = 0; m < samples; ++m) {
                acc += values[m] * std::polar(1.0L, -2 * pi * j * m / samples);
            }
            psi[j] = (acc / static_cast<long double>(samples)).real() / std::pow(radius, j);
        }
        // derivative d-th of Psi as Taylor coefficients
        auto deriv = [&](int d) {
            std::array<long double, terms> out{};
            for (int j = d; j < terms; ++j) {
                long double f = 1.0L;
                for (int i = 0; i < d; ++i) {
                    f *= static_cast<long double>(j - i);
                }
                out[j - d] = psi[j] * f;
            }
            return out;
        };
        long double const pi2 = pi * pi;
        long double const pi4 = pi2 * pi2;
        long double const pi6 = pi4 * pi2;
        long double const pi8 = pi4 * pi4;
        struct term
        {
            int k;
            int d;
            long double w;
        };
        term const table[] = {
            {0, 0, 1.0L},
            {1, 3, -1.0L / (96 * pi2)},
            {2, 2, 1.0L / (64 * pi2)},
            {2, 6, 1.0L / (18432 * pi4)},
            {3, 1, -1.0L / (64 * pi2)},
            {3, 5, -1.0L / (3840 * pi4)},
            {3, 9, -1.0L / (5308416 * pi6)},
            {4, 0, 1.0L / (128 * pi2)},
            {4, 4, 19.0L / (24576 * pi4)},
            {4, 8, 11.0L / (5898240 * pi6)},
            {4, 12, 1.0L / (2038431744.0L * pi8)},
        };
        for (auto const & tm : table) {
            auto const dv = deriv(tm.d);
            for (int j = 0; j < terms; ++j) {
                poly_[tm.k][j] += tm.w * dv[j];
            }
        }
    }

    std::array<std::array<long double, terms>, orders> poly_{};
};

struct rs_log_table
{
    static constexpr std::size_t size = std::size_t{1} << 16;
    std::vector<double> ln_hi;
    std::vector<double> ln_lo;
    std::vector<double> rsqrt;

    static rs_log_table const & instance()
    {
        static rs_log_table const t;
        return t;
    }

private:
    rs_log_table() : ln_hi(size), ln_lo(size), rsqrt(size)
    {
        for (std::size_t n = 1; n < size; ++n) {
            long double const l = std::log(static_cast<long double>(n));
            ln_hi[n] = static_cast<double>(l);
            ln_lo[n] = static_cast<double>(l - static_cast<long double>(ln_hi[n]));
            rsqrt[n] = 1.0 / std::sqrt(static_cast<double>(n));
        }
    }
};

} // namespace detail

/// Hardy Z(t) by the Riemann-Siegel formula with `orders` remainder terms
/// (1..5). Accurate to better than 1e-10 for t >= 200 with all five.
inline double hardy_z_rs(double t, int orders = 5)
{
    constexpr long double pi = std::numbers::pi_v<long double>;
    constexpr long double two_pi = 2 * pi;
    auto const & table = detail::rs_log_table::instance();

    long double const tl = t;
    long double const tau = std::sqrt(tl / two_pi);
    auto const m = static_cast<long>(std::floor(tau));
    long double const p = tau - static_cast<long double>(m);
    long double const th = rs_theta(tl);
    // theta - t ln n in double-double arithmetic, reduced mod 2 pi (Cody-Waite)
    double const th_hi = static_cast<double>(th);
    double const th_lo = static_cast<double>(th - static_cast<long double>(th_hi));
    constexpr double c1 = 6.28125;
    constexpr double c2 = static_cast<double>(two_pi - 6.28125L);
    constexpr double c3 = static_cast<double>(two_pi - 6.28125L - static_cast<long double>(c2));
    double main = 0.0;
    for (long n = 1; n <= m; ++n) {
        auto const idx = static_cast<std::size_t>(n);
        double hi = 0.0;
        double lo = 0.0;
        double w = 0.0;
        if (idx < detail::rs_log_table::size) {
            hi = table.ln_hi[idx];
            lo = table.ln_lo[idx];
            w = table.rsqrt[idx];
        } else {
            long double const l = std::log(static_cast<long double>(n));
            hi = static_cast<double>(l);
            lo = static_cast<double>(l - static_cast<long double>(hi));
            w = 1.0 / std::sqrt(static_cast<double>(n));
        }
        double const prod = t * hi;
        double const prod_err = std::fma(t, hi, -prod) + t * lo;
        double const d = th_hi - prod;
        double const bv = d - th_hi;
        double const d_err = (th_hi - (d - bv)) + (-prod - bv);
        double const k = std::nearbyint(d / static_cast<double>(two_pi));
        double r = d - k * c1;
        r -= k * c2;
        r -= k * c3;
        r += d_err + th_lo - prod_err;
        main += std::cos(r) * w;
    }
    main *= 2;
    auto const & coeffs = detail::rs_coefficients::instance();
    long double const step = std::sqrt(two_pi / tl);
    long double rem = 0.0L;
    long double w = 1.0L;
    for (int k = 0; k < std::clamp(orders, 1, 5); ++k) {
        rem += coeffs.eval(k, p) * w;
        w *= step;
    }
    rem *= std::sqrt(step);
    if ((m - 1) % 2 != 0) {
        rem = -rem;
    }
    return static_cast<double>(main + rem);
}

/// Z(t) with the evaluator appropriate for the height.
inline double hardy_z(double t)
{
    return t <= 1000.0 ? hardy_z_em(t) : hardy_z_rs(t);
}

enum class root_refinement { bisection, illinois };

struct zero_finder_options
{
    double step = 0.02;                // grid step for sign changes
    double tolerance = 1e-9;           // final bracket width
    int max_iterations = 200;
    unsigned threads = 1;
    root_refinement refinement = root_refinement::bisection;
};

namespace detail {

template <typename Z>
double bisect_zero(Z && z, double a, double b, double za, double tol, int max_iterations)
{
    for (int it = 0; it < max_iterations; ++it) {
        if (b - a <= tol) {
            return 0.5 * (a + b);
        }
        double const mid = 0.5 * (a + b);
        double const zm = z(mid);
        if (zm == 0.0) {
            return mid;
        }
        if ((zm < 0.0) == (za < 0.0)) {
            a = mid;
            za = zm;
        } else {
            b = mid;
        }
    }
    throw convergence_error("zero finder: bisection did not reach tolerance within the iteration cap");
}

/// Illinois-modified false position. Once the iterate settles it is confirmed
/// by a sign check at +-tol/2, so the returned point is bracketed to tol like
/// bisection; falls back to bisection when the confirmation fails.
template <typename Z>
double illinois_zero(Z && z, double a, double b, double za, double zb, double tol, int max_iterations)
{
    int side = 0;
    double x = a;
    for (int it = 0; it < max_iterations; ++it) {
        double const prev = x;
        x = (a * zb - b * za) / (zb - za);
        if (!(x > a && x < b)) {
            x = 0.5 * (a + b);
        }
        double const zx = z(x);
        if (zx == 0.0) {
            return x;
        }
        if ((zx < 0.0) == (za < 0.0)) {
            a = x;
            za = zx;
            if (side == -1) {
                zb *= 0.5;
            }
            side = -1;
        } else {
            b = x;
            zb = zx;
            if (side == 1) {
                za *= 0.5;
            }
            side = 1;
        }
        if (b - a <= tol) {
            return 0.5 * (a + b);
        }
        if (it > 0 && std::abs(x - prev) < 0.25 * tol) {
            double const lo = x - 0.5 * tol;
            double const hi = x + 0.5 * tol;
            if (lo > a && hi < b) {
                double const zlo = z(lo);
                double const zhi = z(hi);
                if ((zlo < 0.0) != (zhi < 0.0)) {
                    return x;
                }
            }
        }
    }
    return bisect_zero(z, a, b, za, tol, max_iterations);
}

/// Sign changes of z on the grid points `ts`, each refined to the tolerance.
template <typename Z>
std::vector<double> refine_sign_changes(Z && z, std::vector<double> const & ts, zero_finder_options const & opts)
{
    std::vector<double> values(ts.size());
    parallel_for(ts.size(), opts.threads, [&](std::size_t i) { values[i] = z(ts[i]); });
    std::vector<std::size_t> brackets;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (values[i] == 0.0 || (values[i] < 0.0) != (values[i + 1] < 0.0)) {
            brackets.push_back(i);
        }
    }
    std::vector<double> roots(brackets.size());
    parallel_for(brackets.size(), opts.threads, [&](std::size_t r) {
        std::size_t const i = brackets[r];
        if (values[i] == 0.0) {
            roots[r] = ts[i];
        } else if (opts.refinement == root_refinement::illinois) {
            roots[r] = illinois_zero(z, ts[i], ts[i + 1], values[i], values[i + 1], opts.tolerance, opts.max_iterations);
        } else {
            roots[r] = bisect_zero(z, ts[i], ts[i + 1], values[i], opts.tolerance, opts.max_iterations);
        }
    });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace detail

/// All zero ordinates in (0, T] for T <= 500, located as sign changes of Z
/// (Euler-Maclaurin) on a uniform grid and refined by bisection. Z has no zeros
/// below t = 14, so the scan starts at t = 10 where the theta expansion is accurate.
inline zero_set find_zeros_low(double T, zero_finder_options const & opts = {})
{
    if (!(T <= 500.0)) {
        detail::throw_domain("find_zeros_low: T = " + std::to_string(T) + " exceeds 500; use a zero table");
    }
    if (opts.step <= 0.0 || opts.step > 0.05) {
        detail::throw_domain("find_zeros_low: grid step must lie in (0, 0.05]");
    }
    if (T < 14.0) {
        return zero_set({}, computed_source{"euler-maclaurin"});
    }
    std::vector<double> ts;
    auto const n = static_cast<std::size_t>(std::ceil((T - 10.0) / opts.step));
    for (std::size_t i = 0; i <= n; ++i) {
        ts.push_back(std::min(T, 10.0 + static_cast<double>(i) * opts.step));
    }
    auto roots = detail::refine_sign_changes(hardy_z_em, ts, opts);
    std::erase_if(roots, [T](double g) { return g > T; });
    return zero_set(std::move(roots), computed_source{"euler-maclaurin"});
}

/// Smooth part of the zero-counting function,
/// (T/2pi) ln(T/2pi) - T/2pi + 7/8.
inline double zero_count_estimate(double T)
{
    double const x = T / (2.0 * std::numbers::pi);
    return x * std::log(x) - x + 0.875;
}

/// theta(T)/pi + 1, the smooth part including lower-order terms.
inline double zero_count_smooth(double T)
{
    return static_cast<double>(rs_theta(T) / std::numbers::pi_v<long double>) + 1.0;
}

/// Generates the first `count` zeros. Heights up to 500 use Euler-Maclaurin,
/// higher ones Riemann-Siegel. The grid step is 1/16 of the mean zero spacing;
/// afterwards the running mean of S(t) at the located zeros is checked block
/// by block, and any block whose mean drifts by more than 3/4 (a lost or
/// spurious pair shifts it by 2) is rescanned on a 64x finer grid.
inline zero_set generate_zeros(std::size_t count, unsigned threads = 1)
{
    if (count == 0) {
        return zero_set({}, computed_source{"riemann-siegel"});
    }
    zero_finder_options opts;
    opts.tolerance = 1e-10;
    opts.threads = threads;
    opts.refinement = root_refinement::illinois;
    auto spacing = [](double t) { return 2.0 * std::numbers::pi / std::log(std::max(t, 20.0) / (2.0 * std::numbers::pi)); };
    auto scan = [&](double from, double to, double refine) {
        std::vector<double> ts;
        double t = from;
        while (t < to) {
            ts.push_back(t);
            t += std::min(0.05, spacing(t) / 16.0) / refine;
        }
        ts.push_back(to);
        return detail::refine_sign_changes(hardy_z, ts, opts);
    };
    std::vector<double> zeros;
    double from = 10.0;
    while (zeros.size() < count + 2) {
        // estimate the height of the remaining zeros, overshoot a little
        double to = from + 50.0;
        double const need = static_cast<double>(count + 2 - zeros.size());
        while (zero_count_estimate(to) - zero_count_estimate(from) < need * 1.02 + 5.0) {
            to += std::max(50.0, spacing(to) * need * 0.5);
        }
        auto part = scan(from, to, 1.0);
        zeros.insert(zeros.end(), part.begin(), part.end());
        from = to;
    }

    constexpr std::size_t block = 100;
    for (int pass = 0; pass < 20; ++pass) {
        bool clean = true;
        for (std::size_t b = 0; b * block < zeros.size(); ++b) {
            std::size_t const lo = b * block;
            std::size_t const hi = std::min(zeros.size(), lo + block);
            double mean = 0.0;
            for (std::size_t k = lo; k < hi; ++k) {
                mean += static_cast<double>(k + 1) - 0.5 - zero_count_smooth(zeros[k]);
            }
            mean /= static_cast<double>(hi - lo);
            if (std::abs(mean) <= 0.75) {
                continue;
            }
            clean = false;
            std::size_t const from_idx = lo >= block ? lo - block : 0;
            double const a = from_idx == 0 ? 10.0 : zeros[from_idx - 1] + 1e-7;
            double const z_hi = zeros[hi - 1] + 1e-7;
            auto fine = scan(a, z_hi, 64.0);
            std::vector<double> merged(zeros.begin(), zeros.begin() + static_cast<std::ptrdiff_t>(from_idx));
            merged.insert(merged.end(), fine.begin(), fine.end());
            merged.insert(merged.end(), zeros.begin() + static_cast<std::ptrdiff_t>(hi), zeros.end());
            zeros = std::move(merged);
            break;
        }
        if (clean) {
            zeros.resize(count);
            return zero_set(std::move(zeros), computed_source{"riemann-siegel"});
        }
    }
    throw convergence_error("generate_zeros: zero count did not stabilise after rescans");
}

/// Outcome of comparing the zero count below T with the smooth estimate.
struct count_check_result
{
    double T = 0.0;
    std::size_t count = 0;
    double estimate = 0.0;
    double difference = 0.0;
    double slack = 0.0;
    bool pass = false;
};

/// |#{gamma <= T} - estimate(T)| <= c ln T.
inline count_check_result count_check(zero_set const & zs, double T, double c = 2.0)
{
    if (!zs.empty() && T > zs.height()) {
        detail::throw_domain("count_check: T beyond the table height");
    }
    count_check_result r;
    r.T = T;
    r.count = zs.count_below(T);
    r.estimate = zero_count_estimate(T);
    r.difference = static_cast<double>(r.count) - r.estimate;
    r.slack = c * std::log(T);
    r.pass = std::abs(r.difference) <= r.slack;
    return r;
}

/// Dense sweep of count_check over [lo, hi]. Besides the pointwise slack it
/// tracks the mean of count - estimate, which stays near zero for a complete
/// table; a missing ordinate at height g lowers it by about (hi - g)/(hi - lo).
struct count_sweep_result
{
    std::size_t samples = 0;
    std::size_t pointwise_failures = 0;
    double max_abs_difference = 0.0;
    double mean_difference = 0.0;
    double mean_tolerance = 0.0;
    bool pass = false;
};

inline count_sweep_result count_sweep(zero_set const & zs, double lo, double hi, std::size_t samples,
                                      double c = 2.0, double mean_tolerance = 0.3)
{
    if (samples < 2 || !(lo < hi)) {
        detail::throw_domain("count_sweep: need lo < hi and at least two samples");
    }
    count_sweep_result out;
    out.samples = samples;
    out.mean_tolerance = mean_tolerance;
    double sum = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        double const T = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        auto const r = count_check(zs, T, c);
        out.pointwise_failures += r.pass ? 0 : 1;
        out.max_abs_difference = std::max(out.max_abs_difference, std::abs(r.difference));
        sum += r.difference;
    }
    out.mean_difference = sum / static_cast<double>(samples);
    out.pass = out.pointwise_failures == 0 && std::abs(out.mean_difference) <= mean_tolerance;
    return out;
}

} // namespace gbx
