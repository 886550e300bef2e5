#pragma once

/// @file report.hpp
/// @brief JSON, CSV and gnuplot-table output for every result record.
///
/// JSON carries `"schema": "gbx-report/1"`. The flat CSV starts with the line
/// `# gbx-report-csv 1` and the columns of csv_columns(). Reals are rounded to
/// 12 significant digits before serialization so output is byte-stable.

#include "gbx/check.hpp"
#include "gbx/circle.hpp"
#include "gbx/error.hpp"
#include "gbx/exp_sums.hpp"
#include "gbx/format.hpp"
#include "gbx/verify.hpp"
#include "gbx/zero_sums.hpp"
#include "gbx/zeta.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace gbx {

inline constexpr char const * json_schema = "gbx-report/1";
inline constexpr int csv_schema_version = 1;

using json = nlohmann::ordered_json;

namespace detail {

inline json num(double x)
{
    if (!std::isfinite(x)) {
        return fmt_real(x);  // "inf" / "nan" as strings; JSON has no literal for them
    }
    return round_printed(x);
}

inline json cnum(cplx z)
{
    return json{{"re", num(z.real())}, {"im", num(z.imag())}};
}

} // namespace detail

inline json to_json(tolerances const & t)
{
    return json{{"main_ratio", detail::num(t.main_ratio)},
                {"average_max_ratio", detail::num(t.average_max_ratio)},
                {"average_full_ratio", detail::num(t.average_full_ratio)},
                {"pesato_ratio", detail::num(t.pesato_ratio)},
                {"order_ratio", detail::num(t.order_ratio)},
                {"psi_ratio", detail::num(t.psi_ratio)},
                {"long_rh_ratio", detail::num(t.long_rh_ratio)},
                {"long_gy_ratio", detail::num(t.long_gy_ratio)},
                {"slope", detail::num(t.slope)},
                {"order_slope", detail::num(t.order_slope)},
                {"growth_factor", detail::num(t.growth_factor)},
                {"residue", detail::num(t.residue)},
                {"t_bound", detail::num(t.t_bound)},
                {"t_sharpness", detail::num(t.t_sharpness)},
                {"count_c", detail::num(t.count_c)},
                {"mean_square_ratio", detail::num(t.mean_square_ratio)},
                {"lp_ratio", detail::num(t.lp_ratio)},
                {"decomposition", detail::num(t.decomposition)},
                {"reassembly_rel", detail::num(t.reassembly_rel)}};
}

inline json to_json(verification_report const & r)
{
    json j{{"check", r.check},
           {"family", r.family},
           {"N", r.N},
           {"H", r.H},
           {"y", r.y},
           {"zero_height", detail::num(r.zero_height)},
           {"zeros_used", r.zeros_used},
           {"lhs", detail::num(r.lhs)},
           {"main_term", detail::num(r.main_term)},
           {"zero_term", detail::num(r.zero_term)},
           {"observed_error", detail::num(r.observed_error)},
           {"bound", detail::num(r.bound)},
           {"ratio", detail::num(r.ratio)},
           {"threshold", detail::num(r.threshold)},
           {"trend_slope", r.trend_slope ? detail::num(*r.trend_slope) : json(nullptr)},
           {"pass", r.pass},
           {"ablation", r.ablation},
           {"error", r.error},
           {"notes", r.notes}};
    return j;
}

inline json to_json(trend_summary const & t)
{
    return json{{"check", t.check},
                {"family", t.family},
                {"points", t.points},
                {"ratio_slope", detail::num(t.ratio_slope)},
                {"error_slope", detail::num(t.error_slope)},
                {"bound_slope", detail::num(t.bound_slope)},
                {"ratio_tolerance", detail::num(t.ratio_tolerance)},
                {"growth_factor", detail::num(t.growth_factor)},
                {"pass", t.pass}};
}

inline json to_json(zero_sum_result const & z)
{
    return json{{"value", detail::num(z.value)},
                {"truncation_height", detail::num(z.truncation_height)},
                {"terms_used", z.terms_used},
                {"tail_estimate", detail::num(z.tail_estimate)},
                {"evaluation_path", to_string(z.path)},
                {"series_terms", z.series_terms},
                {"direct_terms", z.direct_terms},
                {"max_imaginary_residue", detail::num(z.max_imaginary_residue)},
                {"crossover_discrepancy", detail::num(z.crossover_discrepancy)},
                {"precision_warning", z.precision_warning},
                {"degenerate", z.degenerate}};
}

inline json to_json(integral_check const & c)
{
    return json{{"name", c.name},
                {"N", c.N},
                {"H", c.H},
                {"y", c.y},
                {"parameter", detail::num(c.parameter)},
                {"value", detail::cnum(c.value)},
                {"reference", detail::num(c.reference)},
                {"discrepancy", detail::num(c.discrepancy)},
                {"bound", detail::num(c.bound)},
                {"ratio", detail::num(c.ratio)},
                {"threshold", detail::num(c.threshold)},
                {"method", to_string(c.method)},
                {"grid", c.grid},
                {"pass", c.pass},
                {"notes", c.notes}};
}

inline json to_json(t_bound_result const & t)
{
    return json{{"N", t.N},
                {"H", t.H},
                {"y", t.y},
                {"samples", t.samples},
                {"ratio_first", detail::num(t.ratio_first)},
                {"alpha_first", detail::num(t.alpha_first)},
                {"second_applies", t.second_applies},
                {"ratio_second", detail::num(t.ratio_second)},
                {"alpha_second", detail::num(t.alpha_second)},
                {"sharpness_applies", t.sharpness_applies},
                {"sharpness", detail::num(t.sharpness)},
                {"threshold", detail::num(t.threshold)},
                {"sharpness_floor", detail::num(t.sharpness_floor)},
                {"pass", t.pass}};
}

inline json to_json(count_check_result const & c)
{
    return json{{"T", detail::num(c.T)},
                {"count", c.count},
                {"estimate", detail::num(c.estimate)},
                {"difference", detail::num(c.difference)},
                {"slack", detail::num(c.slack)},
                {"pass", c.pass}};
}

inline json to_json(count_sweep_result const & c)
{
    return json{{"samples", c.samples},
                {"pointwise_failures", c.pointwise_failures},
                {"max_abs_difference", detail::num(c.max_abs_difference)},
                {"mean_difference", detail::num(c.mean_difference)},
                {"mean_tolerance", detail::num(c.mean_tolerance)},
                {"pass", c.pass}};
}

/// Run metadata recorded in every report header.
struct report_header
{
    std::string command;
    unsigned threads = 1;
    tolerances tol;
    std::string zero_source;
    std::size_t zeros = 0;
    double zero_height = 0.0;
};

inline json to_json(report_header const & h)
{
    return json{{"schema", json_schema},
                {"command", h.command},
                {"threads", h.threads},
                {"zero_source", h.zero_source},
                {"zeros", h.zeros},
                {"zero_height", detail::num(h.zero_height)},
                {"tolerances", to_json(h.tol)}};
}

inline json campaign_json(report_header const & h, campaign_report const & rep)
{
    json j = to_json(h);
    json rows = json::array();
    for (auto const & r : rep.rows) {
        rows.push_back(to_json(r));
    }
    json trends = json::array();
    for (auto const & t : rep.trends) {
        trends.push_back(to_json(t));
    }
    j["rows"] = std::move(rows);
    j["trends"] = std::move(trends);
    j["pass"] = rep.pass();
    return j;
}

inline json rows_json(report_header const & h, std::vector<verification_report> const & rows)
{
    json j = to_json(h);
    json arr = json::array();
    bool pass = true;
    for (auto const & r : rows) {
        arr.push_back(to_json(r));
        pass = pass && (r.ablation || r.pass);
    }
    j["rows"] = std::move(arr);
    j["pass"] = pass;
    return j;
}

inline std::vector<std::string> const & csv_columns()
{
    static std::vector<std::string> const cols{
        "check",      "family",    "N",         "H",              "y",     "zero_height", "zeros_used",
        "lhs",        "main_term", "zero_term", "observed_error", "bound", "ratio",       "threshold",
        "trend_slope", "pass",     "ablation",  "error",          "notes"};
    return cols;
}

namespace detail {

inline std::string csv_field(std::string const & s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

inline std::string join(std::vector<std::string> const & parts, char const * sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out += (i ? sep : "") + parts[i];
    }
    return out;
}

} // namespace detail

inline void write_csv(std::ostream & out, report_header const & h, std::vector<verification_report> const & rows)
{
    out << "# gbx-report-csv " << csv_schema_version << '\n';
    out << "# command " << h.command << " threads " << h.threads << " zeros " << h.zeros << '\n';
    out << "# tolerances " << to_json(h.tol).dump() << '\n';
    out << detail::join(csv_columns(), ",") << '\n';
    for (auto const & r : rows) {
        std::vector<std::string> f{detail::csv_field(r.check),
                                   detail::csv_field(r.family),
                                   std::to_string(r.N),
                                   std::to_string(r.H),
                                   std::to_string(r.y),
                                   fmt_real(r.zero_height),
                                   std::to_string(r.zeros_used),
                                   fmt_real(r.lhs),
                                   fmt_real(r.main_term),
                                   fmt_real(r.zero_term),
                                   fmt_real(r.observed_error),
                                   fmt_real(r.bound),
                                   fmt_real(r.ratio),
                                   fmt_real(r.threshold),
                                   r.trend_slope ? fmt_real(*r.trend_slope) : "",
                                   r.pass ? "1" : "0",
                                   r.ablation ? "1" : "0",
                                   detail::csv_field(r.error),
                                   detail::csv_field(detail::join(r.notes, "; "))};
        out << detail::join(f, ",") << '\n';
    }
}

inline std::string plot_file_name(std::string const & check, std::string const & family, bool ablation)
{
    std::string base = check;
    std::replace(base.begin(), base.end(), ':', '_');
    base += '-';
    base += family.empty() ? "pairs" : family;
    if (ablation) {
        base += "-ablation";
    }
    return base + ".dat";
}

/// One gnuplot table per (check, family): index 0 is |observed error| vs N,
/// index 1 the bound vs N, index 2 the ratio vs N. Returns the files written,
/// sorted.
inline std::vector<std::filesystem::path> emit_plotdata(std::vector<verification_report> const & rows,
                                                        std::filesystem::path const & dir)
{
    if (rows.empty()) {
        detail::throw_domain("emit_plotdata: empty report set");
    }
    std::map<std::string, std::vector<verification_report const *>> groups;
    for (auto const & r : rows) {
        if (r.error.empty()) {
            groups[plot_file_name(r.check, r.family, r.ablation)].push_back(&r);
        }
    }
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (auto & [name, members] : groups) {
        std::stable_sort(members.begin(), members.end(),
                         [](auto const * a, auto const * b) { return std::tie(a->N, a->H) < std::tie(b->N, b->H); });
        auto const path = dir / name;
        std::ofstream out(path);
        if (!out) {
            throw error("emit_plotdata: cannot write " + path.string());
        }
        auto block = [&](char const * what, auto field) {
            out << "# " << members.front()->check << ' ' << what << " vs N\n";
            for (auto const * r : members) {
                out << r->N << ' ' << fmt_real(field(*r)) << '\n';
            }
        };
        block("abs_error", [](auto const & r) { return std::abs(r.observed_error); });
        out << "\n\n";
        block("bound", [](auto const & r) { return r.bound; });
        out << "\n\n";
        block("ratio", [](auto const & r) { return r.ratio; });
        if (!out) {
            throw error("emit_plotdata: write failed for " + path.string());
        }
        written.push_back(path);
    }
    return written;
}

/// |T_H(N, y; alpha)| with both bound overlays on the scan grid: columns
/// alpha, |T|, H min(H, 1/||alpha||), min(H^2, 1/||alpha||^2).
inline void write_t_plot(std::ostream & out, std::int64_t N, std::int64_t H, std::int64_t y, std::size_t samples)
{
    double const hd = static_cast<double>(H);
    out << "# alpha abs_T first_bound second_bound (N=" << N << " H=" << H << " y=" << y << ")\n";
    for (double alpha : t_scan_grid(H, samples)) {
        double const a = dist_to_int(alpha);
        double const inv = a > 0.0 ? 1.0 / a : INFINITY;
        out << fmt_real(alpha) << ' ' << fmt_real(std::abs(t_sum_closed(N, H, y, alpha))) << ' '
            << fmt_real(hd * std::min(hd, inv)) << ' ' << fmt_real(std::min(hd * hd, inv * inv)) << '\n';
    }
}

} // namespace gbx
