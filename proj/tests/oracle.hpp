#pragma once

// Slow reference implementations used only by the tests.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <cstdint>

namespace oracle {

struct prime_power
{
    std::uint64_t p = 0;   // 0 when n is not a prime power
    std::uint32_t k = 0;
};

/// n = p^k by trial division.
inline prime_power factor_prime_power(std::uint64_t n)
{
    if (n < 2) {
        return {};
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            std::uint32_t k = 0;
            while (n % d == 0) {
                n /= d;
                ++k;
            }
            return n == 1 ? prime_power{d, k} : prime_power{};
        }
    }
    return {n, 1};
}

/// Lambda(n) by trial division.
inline double lambda(std::uint64_t n)
{
    if (n < 2) {
        return 0.0;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            while (n % d == 0) {
                n /= d;
            }
            return n == 1 ? std::log(static_cast<double>(d)) : 0.0;
        }
    }
    return std::log(static_cast<double>(n));
}

using big = boost::multiprecision::cpp_bin_float_50;

struct big_complex
{
    big re;
    big im;

    big_complex operator+(big_complex const & o) const { return {re + o.re, im + o.im}; }
    big_complex operator-(big_complex const & o) const { return {re - o.re, im - o.im}; }
    big_complex operator*(big_complex const & o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    big_complex operator/(big_complex const & o) const
    {
        big const d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
};

/// x^{sigma + i t} for real x >= 0, with 0^s = 0.
inline big_complex power(big const & x, big const & sigma, big const & t)
{
    if (x == 0) {
        return {0, 0};
    }
    big const l = log(x);
    big const m = exp(sigma * l);
    return {m * cos(t * l), m * sin(t * l)};
}

/// 2 Re[((N+H)^{rho+2} - 2 N^{rho+2} + (N-H)^{rho+2}) / (rho (rho+1) (rho+2))] at 50 digits.
inline double second_difference(std::int64_t N, std::int64_t H, big const & g)
{
    big const half("0.5");
    big const s_re = half + 2;
    big_complex const rho{half, g};
    big_complex const denom = rho * big_complex{half + 1, g} * big_complex{s_re, g};
    big_complex const num = power(big(N + H), s_re, g) - big_complex{2, 0} * power(big(N), s_re, g)
                            + power(big(N - H), s_re, g);
    big_complex const q = num / denom;
    return static_cast<double>(2 * q.re);
}

inline double second_difference(std::int64_t N, std::int64_t H, char const * gamma)
{
    return second_difference(N, H, big(gamma));
}

/// Ordinate taken as the exact binary value of a double.
inline double second_difference(std::int64_t N, std::int64_t H, double gamma)
{
    return second_difference(N, H, big(gamma));
}

} // namespace oracle
