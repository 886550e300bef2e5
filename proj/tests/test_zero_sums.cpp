#include "common.hpp"
#include "oracle.hpp"

#include "gbx/zero_sums.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gbx;

namespace {

zero_set single(double gamma)
{
    return zero_set({gamma}, computed_source{"fixture"});
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

} // namespace

TEST(SecondDifference, FrozenOracleValues)
{
    // 50-digit values, gamma = 14.134725 exactly
    EXPECT_LE(rel(second_difference_term(10000, 100, single(14.134725)).value, -139476.71409042178912), 1e-10);
    EXPECT_LE(rel(second_difference_term(100, 10, single(14.134725)).value, 89.013784266609386), 1e-10);
    EXPECT_LE(rel(second_difference_term(10000, 10000, single(14.134725)).value, -48189463.4200047111), 1e-10);
}

TEST(SecondDifference, SingleZeroAgainstOracle)
{
    struct fixture
    {
        std::int64_t N, H;
        double gamma;
    };
    fixture const cases[] = {
        {10000, 100, 14.134725141734694},  {1000000, 1000, 14.134725141734694},
        {1000000, 316, 1419.4224809459957}, {1000000, 1000, 74920.827498994187},
        {100000, 46, 9877.7826540055011},  {2, 1, 21.022039638771555},
        {1000000, 1000000, 5000.5},         {1000, 999, 333.3},
    };
    for (auto const & c : cases) {
        double const got = second_difference_term(c.N, c.H, single(c.gamma)).value;
        double const want = oracle::second_difference(c.N, c.H, c.gamma);
        EXPECT_LE(rel(got, want), 1e-10) << c.N << ' ' << c.H << ' ' << c.gamma;
    }
}

TEST(SecondDifference, CrossoverBandAgainstOracle)
{
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> band(0.4, 0.6);
    std::int64_t const N = 1000000;
    std::int64_t const H = 1000;
    for (int i = 0; i < 200; ++i) {
        // |rho + 2| H / N in [0.4, 0.6]
        double const target = band(rng) * static_cast<double>(N) / static_cast<double>(H);
        double const gamma = std::sqrt(target * target - 6.25);
        auto const v = second_difference_single(N, H, gamma);
        double const want = oracle::second_difference(N, H, gamma);
        ASSERT_LE(rel(2.0 * v.value.real(), want), 1e-10) << "gamma = " << gamma;
        if (v.crossover_discrepancy >= 0.0) {
            EXPECT_LE(v.crossover_discrepancy, 1e-9);
        }
    }
}

TEST(SecondDifference, IntegralFormAgrees)
{
    auto const zs = testing_support::zeros().first(1000);
    for (auto [N, H] : {std::pair<std::int64_t, std::int64_t>{10000, 100}, {100, 10}, {100000, 2154}}) {
        double const a = second_difference_term(N, H, zs).value;
        double const b = second_difference_term_integral(N, H, zs, 4).value;
        EXPECT_LE(rel(b, a), 1e-8) << N << ' ' << H;
    }
    // H = N: the (N - t) power oscillates without bound at the far end
    auto const low = zs.first(200);
    EXPECT_LE(rel(second_difference_term_integral(5000, 5000, low, 4).value,
                  second_difference_term(5000, 5000, low).value),
              1e-8);
    double const a = second_difference_term(10000, 100, single(14.134725)).value;
    double const b = second_difference_term_integral(10000, 100, single(14.134725)).value;
    EXPECT_LE(rel(b, a), 1e-8);
}

TEST(SecondDifference, PathBookkeeping)
{
    auto const zs = testing_support::zeros();
    auto const r = second_difference_term(1000000, 1000, zs);
    EXPECT_EQ(r.path, evaluation_path::mixed);
    EXPECT_EQ(r.series_terms + r.direct_terms, zs.size());
    EXPECT_EQ(r.terms_used, zs.size());
    EXPECT_FALSE(r.precision_warning);
    EXPECT_EQ(r.truncation_height, zs.height());
    EXPECT_EQ(second_difference_term(100, 100, zs.first(10)).path, evaluation_path::direct);
    EXPECT_EQ(second_difference_term(1000000, 10, zs.first(10)).path, evaluation_path::series_expansion);
    EXPECT_EQ(r.max_imaginary_residue, 0.0);
}

TEST(SecondDifference, SummationOrderIsImmaterial)
{
    auto const & zs = testing_support::zeros();
    for (auto [N, H] : {std::pair<std::int64_t, std::int64_t>{10000, 100}, {1000000, 100000}}) {
        double const a = second_difference_term(N, H, zs, 1, summation_order::ascending).value;
        double const b = second_difference_term(N, H, zs, 4, summation_order::descending).value;
        EXPECT_LE(rel(b, a), 1e-9);
    }
}

TEST(SecondDifference, ThreadCountIsBitwiseIrrelevant)
{
    auto const & zs = testing_support::zeros();
    EXPECT_EQ(second_difference_term(100000, 316, zs, 1).value, second_difference_term(100000, 316, zs, 7).value);
}

TEST(SecondDifference, TailEstimateCoversOmittedZeros)
{
    auto const & zs = testing_support::zeros();
    double const T = zs.height() / 2.0;
    for (auto [N, H] : {std::pair<std::int64_t, std::int64_t>{100000, 316}, {1000000, 10000}, {10000, 10000}}) {
        auto const lower = second_difference_term(N, H, zs.below(T));
        auto const full = second_difference_term(N, H, zs);
        EXPECT_LE(std::abs(full.value - lower.value), lower.tail_estimate) << N << ' ' << H;
        EXPECT_LT(full.tail_estimate, lower.tail_estimate);
    }
}

TEST(SecondDifference, EmptySetIsDegenerate)
{
    auto const r = second_difference_term(1000, 10, zero_set());
    EXPECT_EQ(r.value, 0.0);
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.truncation_height, 14.0);
    EXPECT_GT(r.tail_estimate, 0.0);
}

TEST(SecondDifference, Validation)
{
    EXPECT_THROW(second_difference_term(1, 1, zero_set()), domain_error);
    EXPECT_THROW(second_difference_term(100, 0, zero_set()), domain_error);
    EXPECT_THROW(second_difference_term(100, 101, zero_set()), domain_error);
    EXPECT_THROW(second_difference_term_integral(100, 101, zero_set()), domain_error);
}

TEST(PsiZeroSum, SingleZeroClosedForm)
{
    double const g = 14.134725141734694;
    std::complex<double> const rho(0.5, g);
    auto const direct = std::pow(std::complex<double>(1000.0, 0.0), rho + 1.0) / (rho * (rho + 1.0));
    EXPECT_NEAR(psi_zero_sum(1000.0, single(g)).value, 2.0 * direct.real(), 1e-9 * std::abs(direct));
}

TEST(PsiZeroSum, EmptyAndInvalid)
{
    EXPECT_THROW(psi_zero_sum(100.0, zero_set()), data_error);
    auto const r = psi_zero_sum(100.0, zero_set(), 1, true);
    EXPECT_EQ(r.value, 0.0);
    EXPECT_TRUE(r.degenerate);
    EXPECT_THROW(psi_zero_sum(1.0, single(20.0)), domain_error);
    EXPECT_THROW(power_zero_sum(10.0, single(20.0), 0), domain_error);
}

TEST(PsiZeroSum, SmallArgumentsAreFinite)
{
    auto const zs = testing_support::zeros().first(1000);
    double const a = psi_zero_sum(2.0, zs).value;
    double const b = psi_zero_sum(2.5, zs).value;
    EXPECT_TRUE(std::isfinite(a));
    EXPECT_TRUE(std::isfinite(b));
    EXPECT_LT(std::abs(a - b), 3.0);
}

TEST(Pesato, IdentityPsiIsolatesZeroTerm)
{
    auto const zs = testing_support::zeros().first(2000);
    auto const r = pesato_identity_check(10000, 100, zs, [](std::int64_t n) { return static_cast<double>(n); });
    double const s = second_difference_term(10000, 100, zs).value;
    EXPECT_EQ(r.observed_error, s);
    EXPECT_DOUBLE_EQ(r.ratio, std::abs(s) / 1e6);
}

TEST(Pesato, SmallWindowIsFinite)
{
    auto const r = pesato_identity_check(1000, 2, testing_support::zeros(), testing_support::psi());
    EXPECT_TRUE(std::isfinite(r.ratio));
    EXPECT_THROW(pesato_identity_check(1000, 1, zero_set(), testing_support::psi()), domain_error);
    EXPECT_THROW(pesato_identity_check(2900000, 200000, zero_set(), testing_support::psi()), data_error);
}

TEST(OrderOfMagnitude, EmptyAndEdge)
{
    auto const empty = order_of_magnitude_check(10000, 100, zero_set());
    EXPECT_EQ(empty.ratio, 0.0);
    EXPECT_TRUE(empty.pass);
    auto const h1 = order_of_magnitude_check(10000, 1, testing_support::zeros());
    EXPECT_TRUE(std::isfinite(h1.ratio));
    EXPECT_FALSE(h1.notes.empty());
}
