#pragma once

#include <cmath>
#include <complex>
#include <span>

namespace gbx {

/// Neumaier-compensated running sum. Adding terms in a fixed order gives a
/// reproducible result whose error does not grow with the number of terms.
template <typename T = double>
class compensated_sum
{
public:
    constexpr compensated_sum() = default;
    constexpr explicit compensated_sum(T initial) : sum_(initial) {}

    constexpr compensated_sum & operator+=(T x)
    {
        T const t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    constexpr compensated_sum & operator-=(T x) { return *this += -x; }

    constexpr T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

/// Complex counterpart, compensating real and imaginary parts independently.
template <typename T = double>
class compensated_complex_sum
{
public:
    constexpr compensated_complex_sum & operator+=(std::complex<T> z)
    {
        re_ += z.real();
        im_ += z.imag();
        return *this;
    }

    constexpr std::complex<T> value() const { return {re_.value(), im_.value()}; }

private:
    compensated_sum<T> re_;
    compensated_sum<T> im_;
};

/// Ascending-order compensated sum of a span.
template <typename T>
T sum_compensated(std::span<T const> xs)
{
    compensated_sum<T> acc;
    for (T x : xs) {
        acc += x;
    }
    return acc.value();
}

} // namespace gbx
