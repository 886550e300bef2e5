#include "common.hpp"

#include "gbx/verify.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace gbx;

namespace {

auto const & W = testing_support::window;
auto const & Z = testing_support::zeros;

} // namespace

TEST(VerifyMain, BelowCalibratedConstant)
{
    auto const tol = tolerances::calibrated();
    auto const r = verify_main(10000, 100, W(), Z(), tol);
    EXPECT_TRUE(r.pass) << r.ratio;
    EXPECT_EQ(r.check, "main");
    EXPECT_EQ(r.main_term, 1e6);
    EXPECT_EQ(r.zeros_used, 100000u);
    EXPECT_FALSE(r.ablation);
    ASSERT_FALSE(r.notes.empty());
    EXPECT_EQ(r.notes.front().rfind("zero-term tail band", 0), 0u);
}

TEST(VerifyMain, FullLengthWindow)
{
    auto const r = verify_main(10000, 10000, W(), Z(), tolerances::calibrated());
    EXPECT_TRUE(std::isfinite(r.ratio));
    EXPECT_NE(std::find(r.notes.begin(), r.notes.end(), "H = N: the long-interval Cesaro regime"), r.notes.end());
}

TEST(VerifyMain, AblationExposesZeroTerm)
{
    auto const tol = tolerances::calibrated();
    auto const spec = make_spec(1000000, 10000);
    auto const rwin = r_window_fft(spec, W());
    auto const with = verify_main(spec, rwin, Z(), tol);
    auto const without = verify_main(spec, rwin, zero_set(), tol);
    EXPECT_TRUE(with.pass);
    EXPECT_TRUE(without.ablation);
    EXPECT_FALSE(without.pass) << without.ratio;
    EXPECT_EQ(without.zero_term, 0.0);
    // the ablated error is the full error plus the omitted zero term
    EXPECT_NEAR(without.observed_error, with.observed_error + with.zero_term, 1e-6 * std::abs(with.zero_term));
    EXPECT_GT(without.ratio, 5.0 * with.ratio);
}

TEST(VerifyAverage, Ratios)
{
    auto const tol = tolerances::calibrated();
    auto const [mx, full] = verify_average(10000, 100, W(), tol);
    EXPECT_TRUE(mx.pass) << mx.ratio;
    EXPECT_TRUE(full.pass) << full.ratio;
    EXPECT_EQ(mx.check, "average:max");
    EXPECT_EQ(full.check, "average:full");
    EXPECT_GE(mx.y, -100);
    EXPECT_LT(mx.y, 100);
}

TEST(VerifyAverage, FullWindowUsesLnTwo)
{
    auto const [mx, full] = verify_average(1000, 1000, W());
    double const l2 = std::log(2.0);
    EXPECT_DOUBLE_EQ(full.bound, 1000.0 * l2 * l2);
    EXPECT_FALSE(full.notes.empty());
    (void)mx;
}

TEST(VerifyAverage, ExactMainTermGivesZero)
{
    auto const spec = make_spec(10000, 100);
    auto const & psi = testing_support::psi();
    r_window fake{spec, {}, r_method::direct};
    for (std::int64_t n = spec.first(); n <= spec.last(); ++n) {
        fake.values.push_back(2.0 * psi(static_cast<std::uint64_t>(n)) - static_cast<double>(n));
    }
    auto const [mx, full] = verify_average(spec, fake, psi);
    EXPECT_EQ(mx.observed_error, 0.0);
    EXPECT_EQ(full.observed_error, 0.0);
    EXPECT_TRUE(mx.pass && full.pass);
}

TEST(VerifyAverage, Deterministic)
{
    auto const a = verify_average(100000, 316, W());
    auto const b = verify_average(100000, 316, W());
    EXPECT_EQ(a.first.lhs, b.first.lhs);
    EXPECT_EQ(a.second.lhs, b.second.lhs);
}

TEST(Chain, ConsistentOnGrid)
{
    for (auto [N, H] : {std::pair<std::int64_t, std::int64_t>{10000, 100}, {100000, 2154}, {1000, 1000}}) {
        auto const spec = make_spec(N, H);
        auto const r = chain_consistency_check(spec, r_window_fft(spec, W()), testing_support::psi());
        EXPECT_TRUE(r.pass) << N << ' ' << H << ' ' << r.ratio;
        EXPECT_LE(r.ratio, 1.0);
    }
}

TEST(PsiFormula, BoundedRemainder)
{
    auto const tol = tolerances::calibrated();
    for (std::int64_t M : {1000, 100000}) {
        auto const r = verify_psi_formula(M, testing_support::psi(), Z(), tol);
        EXPECT_TRUE(r.pass) << M << ' ' << r.ratio;
        // the remainder approaches (ln 2pi - 1/2) M
        EXPECT_NEAR(r.ratio, std::log(2.0 * std::numbers::pi) - 0.5, 0.05);
    }
    EXPECT_THROW(verify_psi_formula(1, testing_support::psi(), Z()), domain_error);
    EXPECT_THROW(verify_psi_formula(4000000, testing_support::psi(), Z()), data_error);
}

TEST(LongInterval, BelowConstants)
{
    auto const [rh, gy] = verify_long_interval(10000, W(), Z());
    EXPECT_TRUE(rh.pass) << rh.ratio;
    EXPECT_TRUE(gy.pass) << gy.ratio;
    EXPECT_EQ(rh.check, "long:rh");
    EXPECT_EQ(gy.check, "long:cesaro");
}

TEST(LongInterval, SmallTableIsFinite)
{
    auto const zs = load_zeros(testing_support::data_file("zeros_100.txt"));
    auto const [rh, gy] = verify_long_interval(100, W(), zs);
    EXPECT_TRUE(std::isfinite(rh.ratio));
    EXPECT_TRUE(std::isfinite(gy.ratio));
    EXPECT_THROW(verify_long_interval(3, W(), zs), domain_error);
}

TEST(LongInterval, AblationBreaksFlatness)
{
    // With the zeros the Cesaro remainder is a stable multiple of N; without
    // them the ratio drifts by an order of magnitude over the same range.
    std::vector<double> with;
    std::vector<double> without;
    for (std::int64_t N : {10000, 100000, 1000000}) {
        with.push_back(verify_long_interval(N, W(), Z()).second.ratio);
        without.push_back(verify_long_interval(N, W(), zero_set()).second.ratio);
    }
    auto spread = [](std::vector<double> const & v) {
        auto const [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo;
    };
    EXPECT_LE(spread(with), 0.05);
    EXPECT_GT(spread(without), 0.5);
}

TEST(Campaign, Families)
{
    EXPECT_EQ(family_h(h_family::sqrt, 100000), 316);
    EXPECT_EQ(family_h(h_family::two_thirds, 1000000), 10000);
    EXPECT_EQ(family_h(h_family::two_thirds, 100000), 2154);
    EXPECT_EQ(family_h(h_family::two_thirds, 8), 4);
    EXPECT_EQ(family_h(h_family::tenth, 12345), 1234);
    EXPECT_EQ(*parse_family("pow2_3"), h_family::two_thirds);
    EXPECT_FALSE(parse_family("cube"));
}

TEST(Campaign, RegressionSlope)
{
    std::vector<double> const x{1, 2, 3, 4};
    std::vector<double> const y{3, 5, 7, 9};
    EXPECT_DOUBLE_EQ(*regression_slope(x, y), 2.0);
    std::vector<double> const flat{2, 2};
    EXPECT_FALSE(regression_slope(flat, std::vector<double>{1, 3}));
    EXPECT_FALSE(regression_slope(std::vector<double>{1}, std::vector<double>{1}));
}

TEST(Campaign, EmptyGrid)
{
    campaign_config cfg;
    auto const rep = grid_campaign(cfg, W(), Z());
    EXPECT_TRUE(rep.rows.empty());
    EXPECT_TRUE(rep.trends.empty());
    EXPECT_TRUE(rep.pass());
}

TEST(Campaign, InvalidPairIsIsolated)
{
    campaign_config cfg;
    cfg.pairs = {{10000, 100}, {100, 200}, {20000, 141}};
    cfg.checks = {"main", "average"};
    auto const rep = grid_campaign(cfg, W(), Z());
    std::size_t errors = 0;
    for (auto const & r : rep.rows) {
        if (!r.error.empty()) {
            ++errors;
            EXPECT_EQ(r.N, 100);
            EXPECT_FALSE(r.pass);
        } else {
            EXPECT_TRUE(r.pass) << r.check << ' ' << r.N;
        }
    }
    EXPECT_EQ(errors, 2u);
    EXPECT_EQ(rep.rows.size(), 2u + 2 * 3u);
    EXPECT_FALSE(rep.pass());
}

TEST(Campaign, OrderingAndTrends)
{
    campaign_config cfg;
    cfg.n_values = {100000, 10000};
    cfg.families = {h_family::sqrt, h_family::tenth};
    cfg.ablation = true;
    auto const rep = grid_campaign(cfg, W(), Z());
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        auto const & a = rep.rows[i - 1];
        auto const & b = rep.rows[i];
        EXPECT_LE(std::tie(a.check, a.N, a.H), std::tie(b.check, b.N, b.H));
    }
    // main, main ablation, average x2, pesato, order, chain per point
    EXPECT_EQ(rep.rows.size(), 4u * 7u);
    // trends for main, average:max, average:full, pesato, order per family
    EXPECT_EQ(rep.trends.size(), 2u * 5u);
    EXPECT_TRUE(rep.pass());
    EXPECT_THROW(grid_campaign(campaign_config{{}, {}, {}, {"nope"}}, W(), Z()), domain_error);
}
