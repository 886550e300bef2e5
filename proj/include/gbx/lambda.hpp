#pragma once

/// @file lambda.hpp
/// @brief The von Mangoldt function, segmented sieving of Lambda windows and
/// Chebyshev psi with compensated prefix sums.

#include "gbx/error.hpp"
#include "gbx/parallel.hpp"
#include "gbx/summation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace gbx {

/// Largest integer accepted by the sieve and by lambda(): every prime below it
/// is exactly representable as a double, so ln p is evaluated on the exact value.
inline constexpr std::uint64_t max_supported_n = std::uint64_t{1} << 53;

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (e != 0) {
        if (e & 1) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return result;
}

/// floor(n^(1/k)) computed exactly with integer corrections.
inline std::uint64_t integer_root(std::uint64_t n, unsigned k)
{
    if (k == 1 || n < 2) {
        return n;
    }
    auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    auto pow_le = [n, k](std::uint64_t base) {
        // true iff base^k <= n, without overflow
        unsigned __int128 acc = 1;
        for (unsigned i = 0; i < k; ++i) {
            acc *= base;
            if (acc > n) {
                return false;
            }
        }
        return true;
    };
    while (r > 0 && !pow_le(r)) {
        --r;
    }
    while (pow_le(r + 1)) {
        ++r;
    }
    return r;
}

inline bool exact_power(std::uint64_t base, unsigned k, std::uint64_t n)
{
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= base;
        if (acc > n) {
            return false;
        }
    }
    return acc == n;
}

} // namespace detail

/// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::pow_mod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = detail::mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

/// Structural value of Lambda at one integer: either zero (p == 0) or the
/// prime power p^k together with the cached natural logarithm of p.
struct lambda_entry
{
    std::uint64_t p = 0;
    std::uint32_t k = 0;
    double log_p = 0.0;

    constexpr bool is_zero() const { return p == 0; }
    constexpr double value() const { return log_p; }

    static lambda_entry prime_power(std::uint64_t p, std::uint32_t k)
    {
        return {p, k, std::log(static_cast<double>(p))};
    }

    friend constexpr bool operator==(lambda_entry const &, lambda_entry const &) = default;
};

/// Classifies n exactly: integer k-th roots and a primality test, no floating
/// point decisions.
inline lambda_entry classify(std::uint64_t n)
{
    if (n < 2) {
        return {};
    }
    if (n > max_supported_n) {
        detail::throw_domain("lambda: n = " + std::to_string(n) + " exceeds 2^53");
    }
    unsigned const max_k = 64u - static_cast<unsigned>(std::countl_zero(n));
    for (unsigned k = 1; k <= max_k; ++k) {
        std::uint64_t const r = detail::integer_root(n, k);
        if (r < 2) {
            break;
        }
        if (detail::exact_power(r, k, n) && is_prime(r)) {
            return lambda_entry::prime_power(r, k);
        }
    }
    return {};
}

/// Lambda(n): ln p when n = p^k, zero otherwise.
inline double lambda(std::uint64_t n)
{
    if (n == 0) {
        detail::throw_domain("lambda: n must be >= 1");
    }
    return classify(n).value();
}

struct sieve_options
{
    std::size_t segment_size = std::size_t{1} << 20;
    unsigned threads = 1;
};

/// Immutable table of Lambda entries over the closed range [lo, hi].
class lambda_window
{
public:
    lambda_window() = default;
    lambda_window(std::uint64_t lo, std::vector<lambda_entry> entries)
        : lo_(lo), entries_(std::move(entries))
    {
        if (lo_ < 1 || entries_.empty()) {
            detail::throw_domain("lambda_window: empty window or lo < 1");
        }
    }

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return lo_ + entries_.size() - 1; }
    std::size_t size() const { return entries_.size(); }

    bool covers(std::uint64_t a, std::uint64_t b) const
    {
        return !entries_.empty() && a >= lo_ && b <= hi() && a <= b;
    }

    void require(std::uint64_t a, std::uint64_t b, char const * who) const
    {
        if (!covers(a, b)) {
            detail::throw_data(std::string(who) + ": Lambda window [" + std::to_string(lo_) + ", "
                               + std::to_string(hi()) + "] does not cover [" + std::to_string(a) + ", "
                               + std::to_string(b) + "]");
        }
    }

    lambda_entry const & entry(std::uint64_t n) const { return entries_[n - lo_]; }
    double operator[](std::uint64_t n) const { return entries_[n - lo_].log_p; }

    std::span<lambda_entry const> entries() const { return entries_; }

    /// Lambda values as a dense array indexed from lo().
    std::vector<double> values() const
    {
        std::vector<double> out(entries_.size());
        std::ranges::transform(entries_, out.begin(), [](lambda_entry const & e) { return e.log_p; });
        return out;
    }

private:
    std::uint64_t lo_ = 1;
    std::vector<lambda_entry> entries_;
};

namespace detail {

inline std::vector<std::uint64_t> small_primes(std::uint64_t limit)
{
    std::vector<std::uint64_t> primes;
    if (limit < 2) {
        return primes;
    }
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) {
            continue;
        }
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) {
            composite[j] = true;
        }
    }
    return primes;
}

inline std::uint64_t isqrt(std::uint64_t n)
{
    return integer_root(n, 2);
}

} // namespace detail

/// Sieves Lambda over [lo, hi] segment by segment. Base primes up to sqrt(hi)
/// are computed once; each segment only touches its own slice of the output,
/// so the result does not depend on the segment size or thread count.
inline lambda_window sieve_window(std::uint64_t lo, std::uint64_t hi, sieve_options const & opts = {})
{
    if (lo < 1 || lo > hi) {
        detail::throw_domain("sieve_window: invalid range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    if (hi > max_supported_n) {
        detail::throw_domain("sieve_window: hi = " + std::to_string(hi) + " exceeds 2^53");
    }
    std::size_t const segment = std::max<std::size_t>(opts.segment_size, 1);
    auto const base = detail::small_primes(detail::isqrt(hi));
    std::size_t const length = hi - lo + 1;
    std::vector<lambda_entry> entries(length);
    std::size_t const segments = (length + segment - 1) / segment;

    parallel_for(segments, opts.threads, [&](std::size_t s) {
        std::uint64_t const a = lo + s * segment;
        std::uint64_t const b = std::min<std::uint64_t>(hi, a + segment - 1);
        std::vector<char> composite(b - a + 1, 0);
        for (std::uint64_t p : base) {
            std::uint64_t start = std::max(p * p, (a + p - 1) / p * p);
            for (std::uint64_t m = start; m <= b; m += p) {
                composite[m - a] = 1;
            }
        }
        for (std::uint64_t n = std::max<std::uint64_t>(a, 2); n <= b; ++n) {
            if (!composite[n - a]) {
                entries[n - lo] = lambda_entry::prime_power(n, 1);
            }
        }
        for (std::uint64_t p : base) {
            std::uint64_t pk = p;
            for (std::uint32_t k = 2;; ++k) {
                if (pk > b / p) {
                    break;
                }
                pk *= p;
                if (pk >= a) {
                    entries[pk - lo] = lambda_entry::prime_power(p, k);
                }
            }
        }
    });
    return lambda_window(lo, std::move(entries));
}

/// Chebyshev psi(x) paired with its argument.
struct psi_value
{
    std::uint64_t x = 0;
    double value = 0.0;
};

/// psi(x) by ascending compensated summation over a window covering [1, x].
inline psi_value psi(std::uint64_t x, lambda_window const & window)
{
    if (x <= 1) {
        return {x, 0.0};
    }
    window.require(1, x, "psi");
    compensated_sum<double> acc;
    for (std::uint64_t m = 2; m <= x; ++m) {
        acc += window[m];
    }
    return {x, acc.value()};
}

/// Prefix cache of psi over [0, hi]. Entry x holds exactly the ascending
/// compensated sum that psi(x, window) would return.
class psi_table
{
public:
    psi_table() = default;
    explicit psi_table(lambda_window const & window)
    {
        window.require(1, window.hi(), "psi_table");
        prefix_.resize(window.hi() + 1, 0.0);
        compensated_sum<double> acc;
        for (std::uint64_t m = 2; m <= window.hi(); ++m) {
            acc += window[m];
            prefix_[m] = acc.value();
        }
    }

    std::uint64_t hi() const { return prefix_.empty() ? 0 : prefix_.size() - 1; }

    double operator()(std::uint64_t x) const
    {
        if (x >= prefix_.size()) {
            detail::throw_data("psi_table: x = " + std::to_string(x) + " beyond cached range " + std::to_string(hi()));
        }
        return prefix_[x];
    }

    std::span<double const> values() const { return prefix_; }

private:
    std::vector<double> prefix_;
};

// Binary cache format, version 1, little-endian:
//   magic    8 bytes  "GBXLAMW\0"
//   version  u32
//   lo, hi   u64, u64
//   entries  (hi - lo + 1) records of { p: u64, k: u32 }   (p == 0 for zero entries)
// ln p is recomputed on load.
inline constexpr std::uint32_t lambda_cache_version = 1;

namespace detail {

template <typename T>
void put_le(std::ostream & out, T v)
{
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        buf[i] = static_cast<unsigned char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xffu);
    }
    out.write(reinterpret_cast<char const *>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream & in, std::string const & path)
{
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char *>(buf), sizeof(T))) {
        throw_data("lambda cache " + path + ": truncated file");
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    }
    return static_cast<T>(v);
}

inline constexpr char lambda_cache_magic[8] = {'G', 'B', 'X', 'L', 'A', 'M', 'W', '\0'};

} // namespace detail

inline void save_window(lambda_window const & window, std::string const & path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        detail::throw_data("cannot open " + path + " for writing");
    }
    out.write(detail::lambda_cache_magic, sizeof detail::lambda_cache_magic);
    detail::put_le<std::uint32_t>(out, lambda_cache_version);
    detail::put_le<std::uint64_t>(out, window.lo());
    detail::put_le<std::uint64_t>(out, window.hi());
    for (auto const & e : window.entries()) {
        detail::put_le<std::uint64_t>(out, e.p);
        detail::put_le<std::uint32_t>(out, e.k);
    }
    if (!out) {
        detail::throw_data("write failed: " + path);
    }
}

inline lambda_window load_window(std::string const & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        detail::throw_data("cannot open " + path);
    }
    char magic[8];
    if (!in.read(magic, sizeof magic) || !std::equal(magic, magic + 8, detail::lambda_cache_magic)) {
        detail::throw_data("lambda cache " + path + ": bad magic");
    }
    auto const version = detail::get_le<std::uint32_t>(in, path);
    if (version != lambda_cache_version) {
        detail::throw_data("lambda cache " + path + ": format version " + std::to_string(version)
                           + ", expected " + std::to_string(lambda_cache_version));
    }
    auto const lo = detail::get_le<std::uint64_t>(in, path);
    auto const hi = detail::get_le<std::uint64_t>(in, path);
    if (lo < 1 || hi < lo || hi > max_supported_n) {
        detail::throw_data("lambda cache " + path + ": invalid range");
    }
    std::vector<lambda_entry> entries(hi - lo + 1);
    for (auto & e : entries) {
        auto const p = detail::get_le<std::uint64_t>(in, path);
        auto const k = detail::get_le<std::uint32_t>(in, path);
        if (p != 0) {
            e = lambda_entry::prime_power(p, k);
        }
    }
    return lambda_window(lo, std::move(entries));
}

} // namespace gbx
