#pragma once

/// @file check.hpp
/// @brief Result records shared by every check, and the pass/fail constants.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gbx {

/// Pass/fail thresholds. The library defaults are deliberately loose; the
/// acceptance grid pins its own calibrated values (see calibrated()).
struct tolerances
{
    double main_ratio = 5.0;          // verify_main |error| / bound
    double average_max_ratio = 5.0;   // max over y, against N (ln N)^2 ln 2H
    double average_full_ratio = 5.0;  // y = H, against N (ln 2N/H)^2
    double pesato_ratio = 5.0;        // |D| / (H N)
    double order_ratio = 5.0;         // |S| / (H^2 N^1/2 (ln N)^2 + H N)
    double psi_ratio = 5.0;           // |sum (psi - n) + zero sum| / M
    double long_rh_ratio = 5.0;       // against N (ln N)^3
    double long_gy_ratio = 5.0;       // against N
    double slope = 0.15;              // ratio-vs-ln N regression slope
    double order_slope = 0.05;
    double growth_factor = 1.15;      // log-log slope relative to the bound's slope
    double residue = 2.0;
    double t_bound = 2.0;
    double t_sharpness = 0.1;
    double count_c = 2.0;
    double mean_square_ratio = 5.0;
    double lp_ratio = 5.0;
    double decomposition = 5.0;       // constants for the I1, I2, I3 estimates
    double reassembly_rel = 1e-6;     // relative tolerance of the circle identity

    /// Constants frozen once from the desk-scale grid N in {1e4, 1e5, 1e6},
    /// H in {N^1/2, N^2/3, N/10}, 1e5 zeros: 1.5 x the largest observed ratio,
    /// rounded up to one significant digit. Not to be retuned.
    static tolerances calibrated()
    {
        tolerances t;
        t.main_ratio = 0.02;          // max observed 0.0088
        t.average_max_ratio = 0.002;  // 0.0011
        t.average_full_ratio = 0.02;  // 0.0075
        t.pesato_ratio = 0.3;         // 0.134
        t.order_ratio = 0.005;        // 0.0027
        t.psi_ratio = 3.0;            // 1.34 over M in {1e3, ..., 1e6}
        return t;
    }
};

/// One row of a verification report.
struct verification_report
{
    std::string check;
    std::int64_t N = 0;
    std::int64_t H = 0;
    std::int64_t y = 0;
    double zero_height = 0.0;
    std::size_t zeros_used = 0;
    double lhs = 0.0;
    double main_term = 0.0;
    double zero_term = 0.0;
    double observed_error = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    double threshold = 0.0;
    std::optional<double> trend_slope;
    bool pass = false;
    bool ablation = false;
    std::string family;
    std::string error;               // non-empty when the row could not be computed
    std::vector<std::string> notes;
};

} // namespace gbx
