#include "common.hpp"

#include "gbx/config.hpp"
#include "gbx/report.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace gbx;

namespace {

campaign_report small_campaign(unsigned threads)
{
    campaign_config cfg;
    cfg.n_values = {10000, 20000, 40000};
    cfg.families = {h_family::sqrt};
    cfg.pairs = {{20000, 20001}};
    cfg.ablation = true;
    cfg.threads = threads;
    return grid_campaign(cfg, testing_support::window(), testing_support::zeros());
}

report_header header()
{
    return {"campaign", 1, tolerances::calibrated(), "file:zeros", 100000, 74920.8274989942};
}

std::string csv_of(campaign_report const & rep)
{
    std::ostringstream out;
    write_csv(out, header(), rep.rows);
    return out.str();
}

} // namespace

TEST(Report, JsonSchemaAndRounding)
{
    auto const rep = small_campaign(1);
    auto const j = campaign_json(header(), rep);
    EXPECT_EQ(j["schema"], "gbx-report/1");
    EXPECT_EQ(j["zero_height"].get<double>(), 74920.8274990);
    EXPECT_EQ(j["tolerances"]["main_ratio"].get<double>(), 0.02);
    EXPECT_FALSE(j["pass"].get<bool>());   // the H > N pair errors out
    auto const & rows = j["rows"];
    ASSERT_EQ(rows.size(), rep.rows.size());
    EXPECT_EQ(rows[0].begin().key(), "check");
    EXPECT_TRUE(rows[0]["trend_slope"].is_null());
    EXPECT_EQ(detail::num(1.0 / 3.0).get<double>(), 0.333333333333);
    EXPECT_EQ(detail::num(INFINITY), "inf");
}

TEST(Report, CsvLayout)
{
    auto const csv = csv_of(small_campaign(1));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# gbx-report-csv 1");
    std::getline(in, line);
    EXPECT_EQ(line, "# command campaign threads 1 zeros 100000");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# tolerances {\"main_ratio\":0.02,", 0), 0u);
    std::getline(in, line);
    EXPECT_EQ(line, "check,family,N,H,y,zero_height,zeros_used,lhs,main_term,zero_term,observed_error,bound,ratio,"
                    "threshold,trend_slope,pass,ablation,error,notes");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, small_campaign(1).rows.size());
}

TEST(Report, CsvQuoting)
{
    EXPECT_EQ(detail::csv_field("plain"), "plain");
    EXPECT_EQ(detail::csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(detail::csv_field("say \"x\""), "\"say \"\"x\"\"\"");
}

TEST(Report, ByteIdenticalAcrossRuns)
{
    auto const a = small_campaign(1);
    auto const b = small_campaign(1);
    EXPECT_EQ(campaign_json(header(), a).dump(2), campaign_json(header(), b).dump(2));
    EXPECT_EQ(csv_of(a), csv_of(b));
    auto const c = small_campaign(3);
    auto const d = small_campaign(3);
    EXPECT_EQ(csv_of(c), csv_of(d));
}

TEST(Report, PlotData)
{
    auto const dir = testing_support::scratch_dir("plots");
    auto const rep = small_campaign(1);
    auto const files = emit_plotdata(rep.rows, dir);
    // main, main ablation, average:max, average:full, pesato, order, chain for the sqrt family;
    // the failing pair writes nothing
    EXPECT_EQ(files.size(), 7u);
    std::ifstream in(dir / "main-sqrt.dat");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(text.rfind("# main abs_error vs N\n10000 ", 0), 0u);
    EXPECT_NE(text.find("\n\n\n# main bound vs N\n"), std::string::npos);
    EXPECT_NE(text.find("# main ratio vs N\n"), std::string::npos);
    EXPECT_TRUE(std::filesystem::exists(dir / "main-sqrt-ablation.dat"));
    EXPECT_TRUE(std::filesystem::exists(dir / "lemma_pesato-sqrt.dat"));

    auto const ok = std::find_if(rep.rows.begin(), rep.rows.end(), [](auto const & r) { return r.error.empty(); });
    ASSERT_NE(ok, rep.rows.end());
    auto const one = emit_plotdata({*ok}, testing_support::scratch_dir("plots-one"));
    EXPECT_EQ(one.size(), 1u);
    EXPECT_THROW(emit_plotdata({}, dir), domain_error);
}

TEST(Report, OtherRecords)
{
    auto const z = second_difference_term(10000, 100, testing_support::zeros().first(10));
    EXPECT_EQ(to_json(z)["evaluation_path"], "series");
    auto const t = t_bound_scan(100, 8, 8, 50);
    EXPECT_EQ(to_json(t)["pass"], true);
    auto const c = count_check(testing_support::zeros(), 1000.0);
    EXPECT_EQ(to_json(c)["count"], 649);
}

TEST(Config, ParsesAllKeys)
{
    std::istringstream in(R"(# campaign
zeros = data/z.txt
max_zeros = 5000
n_values = 10000, 100000
families = sqrt, pow2_3
pairs = 10000:100, 20000 : 200
checks = main, average
ablation = yes
threads = 4
output_dir = out
formats = csv, json
tol.main_ratio = 0.5   # loose
)");
    run_config cfg;
    parse_config(in, cfg);
    EXPECT_EQ(cfg.zeros_path, "data/z.txt");
    EXPECT_EQ(cfg.max_zeros, 5000u);
    EXPECT_EQ(cfg.n_values, (std::vector<std::int64_t>{10000, 100000}));
    EXPECT_EQ(cfg.families, (std::vector<h_family>{h_family::sqrt, h_family::two_thirds}));
    EXPECT_EQ(cfg.pairs.size(), 2u);
    EXPECT_EQ(cfg.pairs[1], (std::pair<std::int64_t, std::int64_t>{20000, 200}));
    EXPECT_EQ(cfg.checks, (std::vector<std::string>{"main", "average"}));
    EXPECT_TRUE(cfg.ablation);
    EXPECT_EQ(cfg.threads, 4u);
    EXPECT_TRUE(cfg.csv && cfg.json);
    EXPECT_EQ(cfg.tol.main_ratio, 0.5);
    EXPECT_EQ(cfg.tol.average_max_ratio, tolerances::calibrated().average_max_ratio);
    auto const c = cfg.campaign();
    EXPECT_EQ(c.threads, 4u);
    EXPECT_EQ(c.tol.main_ratio, 0.5);
}

TEST(Config, ErrorsNameTheLine)
{
    auto fails_at = [](char const * text, char const * where) {
        std::istringstream in(text);
        run_config cfg;
        try {
            parse_config(in, cfg, "cfg");
        } catch (domain_error const & e) {
            return std::string(e.what()).find(where) != std::string::npos;
        }
        return false;
    };
    EXPECT_TRUE(fails_at("threads = 1\ncolour = red\n", "cfg:2: unknown configuration key"));
    EXPECT_TRUE(fails_at("\n\nthreads = 0\n", "cfg:3:"));
    EXPECT_TRUE(fails_at("tol.main_ratio = -1\n", "must be positive"));
    EXPECT_TRUE(fails_at("tol.nothing = 1\n", "unknown tolerance"));
    EXPECT_TRUE(fails_at("n_values = 10, x\n", "not a valid number"));
    EXPECT_TRUE(fails_at("pairs = 100-10\n", "not N:H"));
    EXPECT_TRUE(fails_at("families = cube\n", "unknown family"));
    EXPECT_TRUE(fails_at("just words\n", "expected key = value"));
    EXPECT_TRUE(fails_at("tol.slope = inf\n", "tol.slope"));
    EXPECT_THROW(load_config("/nonexistent/gbx.conf"), data_error);
}

TEST(Config, ZerosPathPrecedence)
{
    run_config cfg;
    ::setenv(zeros_env, "/env/zeros.txt", 1);
    EXPECT_EQ(resolve_zeros_path(std::nullopt, cfg), "/env/zeros.txt");
    cfg.zeros_path = "/cfg/zeros.txt";
    EXPECT_EQ(resolve_zeros_path(std::nullopt, cfg), "/cfg/zeros.txt");
    EXPECT_EQ(resolve_zeros_path(std::string("/flag/zeros.txt"), cfg), "/flag/zeros.txt");
    ::unsetenv(zeros_env);
    EXPECT_EQ(resolve_zeros_path(std::nullopt, run_config{}), "");
}

TEST(Config, ToleranceNames)
{
    auto const names = tolerance_names();
    EXPECT_EQ(names.size(), 19u);
    tolerances t;
    set_tolerance(t, "psi_ratio", 7.0);
    EXPECT_EQ(t.psi_ratio, 7.0);
}
