#pragma once

/// @file config.hpp
/// @brief Run configuration: a plain `key = value` file, validated against a
/// fixed schema, later overridden field by field from the command line.
///
///   zeros = data/zeros.txt
///   max_zeros = 100000
///   n_values = 10000, 100000
///   families = sqrt, pow2_3, tenth
///   pairs = 10000:100, 20000:200
///   checks = main, average
///   ablation = true
///   threads = 1
///   output_dir = out
///   formats = csv, json
///   tol.main_ratio = 0.02
///
/// `#` starts a comment. Unknown keys and malformed values are errors.

#include "gbx/check.hpp"
#include "gbx/error.hpp"
#include "gbx/verify.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace gbx {

/// Environment variable naming the default zero table.
inline constexpr char const * zeros_env = "GBX_ZEROS";

struct run_config
{
    std::string zeros_path;
    std::size_t max_zeros = 0;   // 0 = all
    std::vector<std::int64_t> n_values;
    std::vector<h_family> families;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    std::vector<std::string> checks{"main", "average", "pesato", "order", "chain"};
    bool ablation = false;
    unsigned threads = 1;
    std::string output_dir;
    bool csv = false;
    bool json = false;
    tolerances tol = tolerances::calibrated();

    campaign_config campaign() const
    {
        campaign_config c;
        c.n_values = n_values;
        c.families = families;
        c.pairs = pairs;
        c.checks = checks;
        c.ablation = ablation;
        c.tol = tol;
        c.threads = threads;
        return c;
    }
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    auto const b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    auto const e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto const comma = s.find(',', start);
        auto const piece = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!piece.empty()) {
            out.emplace_back(piece);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view s, std::string const & what)
{
    T v{};
    auto const * end = s.data() + s.size();
    auto const [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) {
        throw_domain(what + ": '" + std::string(s) + "' is not a valid number");
    }
    return v;
}

inline double parse_real(std::string_view s, std::string const & what)
{
    double const v = parse_number<double>(s, what);
    if (!std::isfinite(v)) {
        throw_domain(what + ": '" + std::string(s) + "' is not finite");
    }
    return v;
}

inline bool parse_bool(std::string_view s, std::string const & what)
{
    if (s == "true" || s == "1" || s == "yes") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no") {
        return false;
    }
    throw_domain(what + ": '" + std::string(s) + "' is not a boolean");
}

inline std::map<std::string, double tolerances::*> const & tolerance_fields()
{
    static std::map<std::string, double tolerances::*> const fields{
        {"main_ratio", &tolerances::main_ratio},
        {"average_max_ratio", &tolerances::average_max_ratio},
        {"average_full_ratio", &tolerances::average_full_ratio},
        {"pesato_ratio", &tolerances::pesato_ratio},
        {"order_ratio", &tolerances::order_ratio},
        {"psi_ratio", &tolerances::psi_ratio},
        {"long_rh_ratio", &tolerances::long_rh_ratio},
        {"long_gy_ratio", &tolerances::long_gy_ratio},
        {"slope", &tolerances::slope},
        {"order_slope", &tolerances::order_slope},
        {"growth_factor", &tolerances::growth_factor},
        {"residue", &tolerances::residue},
        {"t_bound", &tolerances::t_bound},
        {"t_sharpness", &tolerances::t_sharpness},
        {"count_c", &tolerances::count_c},
        {"mean_square_ratio", &tolerances::mean_square_ratio},
        {"lp_ratio", &tolerances::lp_ratio},
        {"decomposition", &tolerances::decomposition},
        {"reassembly_rel", &tolerances::reassembly_rel}};
    return fields;
}

} // namespace detail

/// Sets one tolerance by name; the value must be positive.
inline void set_tolerance(tolerances & tol, std::string const & name, double value)
{
    auto const & fields = detail::tolerance_fields();
    auto const it = fields.find(name);
    if (it == fields.end()) {
        detail::throw_domain("unknown tolerance '" + name + "'");
    }
    if (!(value > 0.0)) {
        detail::throw_domain("tolerance " + name + " must be positive");
    }
    tol.*(it->second) = value;
}

inline std::vector<std::string> tolerance_names()
{
    std::vector<std::string> out;
    for (auto const & [k, v] : detail::tolerance_fields()) {
        out.push_back(k);
    }
    return out;
}

/// Applies one `key = value` setting.
inline void apply_setting(run_config & cfg, std::string const & key, std::string_view value)
{
    if (key == "zeros") {
        cfg.zeros_path = std::string(value);
    } else if (key == "max_zeros") {
        cfg.max_zeros = detail::parse_number<std::size_t>(value, key);
    } else if (key == "n_values") {
        cfg.n_values.clear();
        for (auto const & s : detail::split_list(value)) {
            cfg.n_values.push_back(detail::parse_number<std::int64_t>(s, key));
        }
    } else if (key == "families") {
        cfg.families.clear();
        for (auto const & s : detail::split_list(value)) {
            auto const f = parse_family(s);
            if (!f) {
                detail::throw_domain("families: unknown family '" + s + "' (sqrt, pow2_3, tenth, full)");
            }
            cfg.families.push_back(*f);
        }
    } else if (key == "pairs") {
        cfg.pairs.clear();
        for (auto const & s : detail::split_list(value)) {
            auto const colon = s.find(':');
            if (colon == std::string::npos) {
                detail::throw_domain("pairs: '" + s + "' is not N:H");
            }
            cfg.pairs.emplace_back(detail::parse_number<std::int64_t>(detail::trim(std::string_view(s).substr(0, colon)), key),
                                   detail::parse_number<std::int64_t>(detail::trim(std::string_view(s).substr(colon + 1)), key));
        }
    } else if (key == "checks") {
        cfg.checks = detail::split_list(value);
    } else if (key == "ablation") {
        cfg.ablation = detail::parse_bool(value, key);
    } else if (key == "threads") {
        cfg.threads = detail::parse_number<unsigned>(value, key);
        if (cfg.threads == 0) {
            detail::throw_domain("threads must be >= 1");
        }
    } else if (key == "output_dir") {
        cfg.output_dir = std::string(value);
    } else if (key == "formats") {
        cfg.csv = false;
        cfg.json = false;
        for (auto const & s : detail::split_list(value)) {
            if (s == "csv") {
                cfg.csv = true;
            } else if (s == "json") {
                cfg.json = true;
            } else {
                detail::throw_domain("formats: unknown format '" + s + "'");
            }
        }
    } else if (key.rfind("tol.", 0) == 0) {
        set_tolerance(cfg.tol, key.substr(4), detail::parse_real(value, key));
    } else {
        detail::throw_domain("unknown configuration key '" + key + "'");
    }
}

inline void parse_config(std::istream & in, run_config & cfg, std::string const & origin = "config")
{
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view v(line);
        if (auto const hash = v.find('#'); hash != std::string_view::npos) {
            v = v.substr(0, hash);
        }
        v = detail::trim(v);
        if (v.empty()) {
            continue;
        }
        auto const eq = v.find('=');
        if (eq == std::string_view::npos) {
            detail::throw_domain(origin + ":" + std::to_string(number) + ": expected key = value");
        }
        std::string const key(detail::trim(v.substr(0, eq)));
        try {
            apply_setting(cfg, key, detail::trim(v.substr(eq + 1)));
        } catch (domain_error const & e) {
            detail::throw_domain(origin + ":" + std::to_string(number) + ": " + e.what());
        }
    }
}

inline run_config load_config(std::string const & path)
{
    std::ifstream in(path);
    if (!in) {
        detail::throw_data("cannot open config file " + path);
    }
    run_config cfg;
    parse_config(in, cfg, path);
    return cfg;
}

/// Flag value first, then the config file, then the environment.
inline std::string resolve_zeros_path(std::optional<std::string> const & flag, run_config const & cfg)
{
    if (flag && !flag->empty()) {
        return *flag;
    }
    if (!cfg.zeros_path.empty()) {
        return cfg.zeros_path;
    }
    if (char const * env = std::getenv(zeros_env); env != nullptr && *env != '\0') {
        return env;
    }
    return {};
}

} // namespace gbx
