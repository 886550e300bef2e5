#include "common.hpp"

#include "gbx/zeta.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace gbx;

namespace {

// mpmath 1.3 siegelz / siegeltheta at 30 digits
struct z_fixture
{
    double t;
    double z;
    double theta;
};

constexpr z_fixture z_values[] = {
    {14.5, 0.29735094506723941896, -1.578292923981551567025371},
    {100.0, 2.692697056664463475, 87.97216523178721962548313},
    {300.0, -0.77298701299230422726, 429.4931815998190671164885},
    {500.0, 1.4724478510550852727, 843.7901005881892295154034},
    {1000.0, 0.99779463752158661399, 2034.546428038031608703345},
    {5000.0, -0.80425723635293984958, 14197.89761760219780996927},
    {74920.5, 3.3329338672158617848, 314152.7177937726600979767},
};

std::string write_table(char const * name, char const * body)
{
    auto const path = (testing_support::scratch_dir(name) / "z.txt").string();
    std::ofstream(path) << body;
    return path;
}

} // namespace

TEST(HardyZ, MatchesReference)
{
    for (auto const & f : z_values) {
        EXPECT_NEAR(hardy_z(f.t), f.z, 1e-9) << "t = " << f.t;
        EXPECT_NEAR(static_cast<double>(rs_theta(f.t)), f.theta, 1e-9) << "t = " << f.t;
    }
}

TEST(HardyZ, EvaluatorsAgreeInOverlap)
{
    for (double t : {600.0, 777.7, 999.0}) {
        EXPECT_NEAR(hardy_z_em(t), hardy_z_rs(t), 1e-8) << "t = " << t;
    }
}

TEST(FindZeros, FirstOrdinatesAndCount)
{
    auto const zs = find_zeros_low(100.0);
    ASSERT_EQ(zs.size(), 29u);
    EXPECT_NEAR(zs.gammas()[0], 14.134725, 1e-6);
    EXPECT_NEAR(zs.gammas()[1], 21.022040, 1e-6);
    EXPECT_NEAR(zs.gammas()[28], 98.831194218193692233, 1e-8);
}

TEST(FindZeros, Validation)
{
    EXPECT_THROW(find_zeros_low(501.0), domain_error);
    zero_finder_options o;
    o.step = 0.06;
    EXPECT_THROW(find_zeros_low(100.0, o), domain_error);
    o.step = 0.0;
    EXPECT_THROW(find_zeros_low(100.0, o), domain_error);
    EXPECT_TRUE(find_zeros_low(13.0).empty());
}

TEST(ZeroTable, ShippedTableMatchesFinder)
{
    auto const shipped = load_zeros(testing_support::data_file("zeros_100.txt"));
    ASSERT_EQ(shipped.size(), 100u);
    auto const found = find_zeros_low(237.0);
    ASSERT_EQ(found.size(), 100u);
    for (std::size_t i = 0; i < 100; ++i) {
        EXPECT_NEAR(shipped.gammas()[i], found.gammas()[i], 1e-9);
    }
    auto const & src = std::get<file_table_source>(shipped.source());
    EXPECT_DOUBLE_EQ(src.precision, 5e-10);
}

TEST(ZeroTable, WorkingTableSpotValues)
{
    auto const & zs = testing_support::zeros();
    ASSERT_EQ(zs.size(), 100000u);
    // mpmath zetazero(k).imag
    EXPECT_NEAR(zs.gammas()[0], 14.13472514173469379, 1e-9);
    EXPECT_NEAR(zs.gammas()[999], 1419.4224809459956865, 1e-8);
    EXPECT_NEAR(zs.gammas()[9999], 9877.7826540055011428, 1e-8);
    EXPECT_NEAR(zs.gammas()[99999], 74920.827498994186794, 1e-8);
}

TEST(ZeroTable, LoadErrorsCarryLineNumbers)
{
    auto const unsorted = write_table("unsorted", "# c\n14.5\n\n21.0\n20.0\n");
    try {
        load_zeros(unsorted);
        FAIL();
    } catch (data_error const & e) {
        EXPECT_NE(std::string(e.what()).find(":5:"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("ordering"), std::string::npos);
    }
    auto const junk = write_table("junk", "14.5\nabc\n");
    try {
        load_zeros(junk);
        FAIL();
    } catch (data_error const & e) {
        EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
    }
    EXPECT_THROW(load_zeros(write_table("low", "13.9\n21.0\n")), data_error);
    EXPECT_THROW(load_zeros(write_table("empty", "# nothing\n")), data_error);
    EXPECT_THROW(load_zeros("/nonexistent/zeros.txt"), data_error);
}

TEST(ZeroTable, MaxCountAndPrecision)
{
    auto const path = write_table("prec", "14.134725\n21.02\n25.010857580\n");
    auto const zs = load_zeros(path, 2);
    EXPECT_EQ(zs.size(), 2u);
    EXPECT_DOUBLE_EQ(std::get<file_table_source>(zs.source()).precision, 5e-3);
}

TEST(ZeroSet, Queries)
{
    zero_set const zs({14.2, 21.0, 25.0}, computed_source{"test"});
    EXPECT_EQ(zs.count_below(21.0), 2u);
    EXPECT_EQ(zs.count_below(14.0), 0u);
    EXPECT_EQ(zs.below(22.0).size(), 2u);
    EXPECT_EQ(zs.first(10).size(), 3u);
    EXPECT_EQ(zs.height(), 25.0);
    EXPECT_EQ(describe(zs.source()), "computed:test");
    EXPECT_THROW(zero_set({21.0, 14.2}, computed_source{"x"}), data_error);
    EXPECT_TRUE(zero_set().empty());
}

TEST(ZeroTable, WriteRoundTrip)
{
    auto const path = (testing_support::scratch_dir("write") / "z.txt").string();
    auto const zs = find_zeros_low(60.0);
    write_zeros(path, zs, 9);
    auto const back = load_zeros(path);
    ASSERT_EQ(back.size(), zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        EXPECT_NEAR(back.gammas()[i], zs.gammas()[i], 5e-10);
    }
}

TEST(ZeroCount, WorkingTablePasses)
{
    auto const & zs = testing_support::zeros();
    for (double T : {100.0, 1000.0, 10000.0, 74000.0}) {
        EXPECT_TRUE(count_check(zs, T).pass) << "T = " << T;
    }
    auto const sweep = count_sweep(zs, 100.0, 74000.0, 5000);
    EXPECT_TRUE(sweep.pass) << sweep.mean_difference;
    EXPECT_THROW(count_check(zs, 80000.0), domain_error);
}

TEST(ZeroCount, SweepDetectsMissingZero)
{
    auto const & zs = testing_support::zeros();
    std::vector<double> g(zs.gammas().begin(), zs.gammas().end());
    g.erase(g.begin() + 50);
    zero_set const holed(std::move(g), computed_source{"test"});
    EXPECT_FALSE(count_sweep(holed, 100.0, 74000.0, 5000).pass);
}

TEST(ZeroGeneration, MatchesShippedTable)
{
    auto const gen = generate_zeros(100);
    auto const shipped = load_zeros(testing_support::data_file("zeros_100.txt"));
    ASSERT_EQ(gen.size(), 100u);
    for (std::size_t i = 0; i < 100; ++i) {
        EXPECT_NEAR(gen.gammas()[i], shipped.gammas()[i], 1e-9);
    }
}
