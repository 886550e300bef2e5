// gbx: command-line front end.
//
// Exit codes: 0 success, 1 a check failed, 2 usage error, 3 data error.

#include "gbx/circle.hpp"
#include "gbx/config.hpp"
#include "gbx/exp_sums.hpp"
#include "gbx/goldbach.hpp"
#include "gbx/lambda.hpp"
#include "gbx/report.hpp"
#include "gbx/verify.hpp"
#include "gbx/zero_sums.hpp"
#include "gbx/zeta.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check = 1;
constexpr int exit_usage = 2;
constexpr int exit_data = 3;

struct options
{
    std::string config_path;
    std::optional<std::string> zeros;
    std::optional<std::size_t> max_zeros;
    std::optional<unsigned> threads;
    bool json = false;
    bool csv = false;
    std::optional<std::string> out_dir;
    std::vector<std::string> tol;

    // shared numeric arguments
    std::int64_t N = 0;
    std::int64_t H = 0;
    std::optional<std::int64_t> y;
    std::int64_t n = 0;
    std::int64_t M = 0;
    double T = 0.0;
    double xi = 0.0;
    std::size_t samples = 4000;
    bool ablation = false;
};

struct context
{
    options opt;
    gbx::run_config cfg;
    std::string command;

    gbx::report_header header(gbx::zero_set const * zs = nullptr) const
    {
        gbx::report_header h;
        h.command = command;
        h.threads = cfg.threads;
        h.tol = cfg.tol;
        if (zs != nullptr) {
            h.zero_source = gbx::describe(zs->source());
            h.zeros = zs->size();
            h.zero_height = zs->height();
        }
        return h;
    }

    gbx::zero_set zeros() const
    {
        auto const path = gbx::resolve_zeros_path(opt.zeros, cfg);
        if (path.empty()) {
            throw gbx::data_error(std::string("no zero table: pass --zeros or set ") + gbx::zeros_env);
        }
        return gbx::load_zeros(path, cfg.max_zeros);
    }
};

/// Config file first, flags on top.
void resolve(context & ctx)
{
    if (!ctx.opt.config_path.empty()) {
        ctx.cfg = gbx::load_config(ctx.opt.config_path);
    }
    if (ctx.opt.max_zeros) {
        ctx.cfg.max_zeros = *ctx.opt.max_zeros;
    }
    if (ctx.opt.threads) {
        if (*ctx.opt.threads == 0) {
            throw gbx::domain_error("--threads must be >= 1");
        }
        ctx.cfg.threads = *ctx.opt.threads;
    }
    if (ctx.opt.out_dir) {
        ctx.cfg.output_dir = *ctx.opt.out_dir;
    }
    ctx.cfg.json = ctx.cfg.json || ctx.opt.json;
    ctx.cfg.csv = ctx.cfg.csv || ctx.opt.csv;
    for (auto const & kv : ctx.opt.tol) {
        auto const eq = kv.find('=');
        if (eq == std::string::npos) {
            throw gbx::domain_error("--tol expects name=value, got '" + kv + "'");
        }
        gbx::set_tolerance(ctx.cfg.tol, kv.substr(0, eq), gbx::detail::parse_real(kv.substr(eq + 1), "--tol"));
    }
}

std::string file_stem(std::string s)
{
    for (auto & c : s) {
        if (c == ':' || c == ' ' || c == '/') {
            c = '_';
        }
    }
    return s;
}

/// Writes `text` to stdout, or to <output_dir>/<stem>.<ext> when a directory is set.
void emit(context const & ctx, std::string const & ext, std::string const & text)
{
    if (ctx.cfg.output_dir.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(ctx.cfg.output_dir);
    auto const path = std::filesystem::path(ctx.cfg.output_dir) / (file_stem(ctx.command) + "." + ext);
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw gbx::error("cannot write " + path.string());
    }
}

void print_row(gbx::verification_report const & r)
{
    std::cout << r.check << (r.family.empty() ? "" : " [" + r.family + "]") << "  N=" << r.N << " H=" << r.H
              << " y=" << r.y;
    if (!r.error.empty()) {
        std::cout << "  ERROR " << r.error << '\n';
        return;
    }
    std::cout << "  lhs=" << gbx::fmt_real(r.lhs) << " main=" << gbx::fmt_real(r.main_term)
              << " zero=" << gbx::fmt_real(r.zero_term) << " error=" << gbx::fmt_real(r.observed_error)
              << " bound=" << gbx::fmt_real(r.bound) << " ratio=" << gbx::fmt_real(r.ratio)
              << " threshold=" << gbx::fmt_real(r.threshold) << (r.ablation ? " ablation" : "")
              << (r.pass ? " PASS" : " FAIL") << '\n';
    for (auto const & n : r.notes) {
        std::cout << "    note: " << n << '\n';
    }
}

int report_rows(context const & ctx, std::vector<gbx::verification_report> const & rows,
                gbx::zero_set const * zs = nullptr)
{
    bool pass = true;
    for (auto const & r : rows) {
        pass = pass && (r.ablation || r.pass);
    }
    bool structured = false;
    if (ctx.cfg.json) {
        emit(ctx, "json", gbx::rows_json(ctx.header(zs), rows).dump(2) + "\n");
        structured = true;
    }
    if (ctx.cfg.csv) {
        std::ostringstream s;
        gbx::write_csv(s, ctx.header(zs), rows);
        emit(ctx, "csv", s.str());
        structured = true;
    }
    if (!structured) {
        for (auto const & r : rows) {
            print_row(r);
        }
    }
    return pass ? exit_ok : exit_check;
}

int report_json_or_text(context const & ctx, gbx::json const & body, bool pass, std::string const & text)
{
    if (ctx.cfg.json) {
        auto j = gbx::to_json(ctx.header());
        j["result"] = body;
        j["pass"] = pass;
        emit(ctx, "json", j.dump(2) + "\n");
    } else {
        std::cout << text;
    }
    return pass ? exit_ok : exit_check;
}

std::string integral_text(gbx::integral_check const & c)
{
    std::ostringstream s;
    s << c.name << "  N=" << c.N << " H=" << c.H << " y=" << c.y << " param=" << gbx::fmt_real(c.parameter)
      << "  value=" << gbx::fmt_real(c.value.real()) << (c.value.imag() < 0 ? "" : "+")
      << gbx::fmt_real(c.value.imag()) << "i reference=" << gbx::fmt_real(c.reference)
      << " discrepancy=" << gbx::fmt_real(c.discrepancy) << " bound=" << gbx::fmt_real(c.bound)
      << " ratio=" << gbx::fmt_real(c.ratio) << " threshold=" << gbx::fmt_real(c.threshold) << " grid=" << c.grid
      << (c.pass ? " PASS" : " FAIL") << '\n';
    for (auto const & n : c.notes) {
        s << "    note: " << n << '\n';
    }
    return s.str();
}

gbx::lambda_window sieve_to(context const & ctx, std::int64_t hi)
{
    gbx::sieve_options so;
    so.threads = ctx.cfg.threads;
    return gbx::sieve_window(1, static_cast<std::uint64_t>(std::max<std::int64_t>(hi, 2)), so);
}

// ---------------------------------------------------------------- commands

int cmd_sieve(context & ctx, std::uint64_t lo, std::uint64_t hi, std::string const & cache, std::string const & load,
              bool list)
{
    gbx::sieve_options so;
    so.threads = ctx.cfg.threads;
    auto const w = load.empty() ? gbx::sieve_window(lo, hi, so) : gbx::load_window(load);
    if (!cache.empty()) {
        gbx::save_window(w, cache);
    }
    std::size_t count = 0;
    for (std::uint64_t n = w.lo(); n <= w.hi(); ++n) {
        count += w.entry(n).is_zero() ? 0 : 1;
    }
    if (list) {
        for (std::uint64_t n = w.lo(); n <= w.hi(); ++n) {
            if (!w.entry(n).is_zero()) {
                std::cout << n << ' ' << gbx::fmt_real(w[n]) << '\n';
            }
        }
        return exit_ok;
    }
    std::cout << "window " << w.lo() << ' ' << w.hi() << "\nprime_powers " << count << '\n';
    if (w.lo() == 1) {
        std::cout << "psi " << gbx::fmt_real(gbx::psi(w.hi(), w).value) << '\n';
    }
    return exit_ok;
}

int cmd_r(context & ctx, std::string const & method, std::string const & csv_out)
{
    auto const & o = ctx.opt;
    if (o.n > 0) {
        if (o.N > 0) {
            throw gbx::domain_error("r: give either --n or --N/--H");
        }
        auto const w = sieve_to(ctx, o.n);
        std::cout << gbx::fmt_real(gbx::r_direct(o.n, w)) << '\n';
        return exit_ok;
    }
    auto const spec = gbx::make_spec(o.N, o.H);
    auto const w = sieve_to(ctx, spec.last());
    auto const rw = method == "direct" ? gbx::r_window_direct(spec, w) : gbx::r_window_fft(spec, w);
    if (csv_out.empty()) {
        gbx::write_r_csv(std::cout, rw);
    } else {
        std::ofstream out(csv_out);
        if (!out) {
            throw gbx::error("cannot write " + csv_out);
        }
        gbx::write_r_csv(out, rw);
    }
    return exit_ok;
}

int cmd_zeros_validate(context & ctx)
{
    auto const zs = ctx.zeros();
    std::ostringstream s;
    gbx::json body{{"count", zs.size()}};
    bool pass = !zs.empty();
    s << "source " << gbx::describe(zs.source()) << "\ncount " << zs.size() << '\n';
    if (!zs.empty()) {
        auto const c = gbx::count_check(zs, zs.height(), ctx.cfg.tol.count_c);
        auto const sweep = gbx::count_sweep(zs, 15.0, zs.height(), 200, ctx.cfg.tol.count_c);
        pass = c.pass && sweep.pass;
        s << "first " << gbx::fmt_real(zs.gammas().front()) << "\nlast " << gbx::fmt_real(zs.height())
          << "\nordering strictly ascending\ncount_check T=" << gbx::fmt_real(c.T) << " count=" << c.count
          << " estimate=" << gbx::fmt_real(c.estimate) << " slack=" << gbx::fmt_real(c.slack)
          << (c.pass ? " PASS" : " FAIL") << "\ncount_sweep samples=" << sweep.samples
          << " max_abs_difference=" << gbx::fmt_real(sweep.max_abs_difference)
          << " mean_difference=" << gbx::fmt_real(sweep.mean_difference) << (sweep.pass ? " PASS" : " FAIL")
          << '\n';
        body["first"] = gbx::detail::num(zs.gammas().front());
        body["last"] = gbx::detail::num(zs.height());
        body["count_check"] = gbx::to_json(c);
        body["count_sweep"] = gbx::to_json(sweep);
    }
    return report_json_or_text(ctx, body, pass, s.str());
}

int cmd_zeros_find(context & ctx, double step)
{
    gbx::zero_finder_options zo;
    zo.step = step;
    zo.threads = ctx.cfg.threads;
    auto const zs = gbx::find_zeros_low(ctx.opt.T, zo);
    std::ostringstream s;
    gbx::json arr = gbx::json::array();
    for (double g : zs.gammas()) {
        s << gbx::fmt_real(g) << '\n';
        arr.push_back(gbx::detail::num(g));
    }
    return report_json_or_text(ctx, gbx::json{{"T", gbx::detail::num(ctx.opt.T)}, {"zeros", arr}}, true, s.str());
}

int cmd_zeros_generate(context & ctx, std::size_t count, std::string const & out, int decimals)
{
    auto const zs = gbx::generate_zeros(count, ctx.cfg.threads);
    if (!out.empty()) {
        auto const parent = std::filesystem::path(out).parent_path();
        if (!parent.empty()) {
            std::filesystem::create_directories(parent);
        }
    }
    gbx::write_zeros(out, zs, decimals);
    std::cout << "wrote " << zs.size() << " zeros up to " << gbx::fmt_real(zs.height()) << " to " << out << '\n';
    return exit_ok;
}

std::string zero_sum_text(gbx::zero_sum_result const & z)
{
    std::ostringstream s;
    s << "value " << gbx::fmt_real(z.value) << "\ntruncation_height " << gbx::fmt_real(z.truncation_height)
      << "\nterms_used " << z.terms_used << "\ntail_estimate " << gbx::fmt_real(z.tail_estimate)
      << "\nevaluation_path " << gbx::to_string(z.path) << '\n';
    if (z.precision_warning) {
        s << "warning series/direct discrepancy " << gbx::fmt_real(z.crossover_discrepancy) << '\n';
    }
    if (z.degenerate) {
        s << "note empty zero set\n";
    }
    return s.str();
}

int cmd_zero_sum_psi(context & ctx)
{
    auto const zs = ctx.zeros();
    auto const z = gbx::psi_zero_sum(static_cast<double>(ctx.opt.M), zs, ctx.cfg.threads);
    return report_json_or_text(ctx, gbx::to_json(z), true, zero_sum_text(z));
}

int cmd_zero_sum_second(context & ctx, bool integral, bool descending)
{
    auto const zs = ctx.zeros();
    auto const z = integral ? gbx::second_difference_term_integral(ctx.opt.N, ctx.opt.H, zs, ctx.cfg.threads)
                            : gbx::second_difference_term(ctx.opt.N, ctx.opt.H, zs, ctx.cfg.threads,
                                                          descending ? gbx::summation_order::descending
                                                                     : gbx::summation_order::ascending);
    return report_json_or_text(ctx, gbx::to_json(z), true, zero_sum_text(z));
}

int cmd_verify(context & ctx, std::string const & kind)
{
    auto const & o = ctx.opt;
    auto const & tol = ctx.cfg.tol;
    unsigned const threads = ctx.cfg.threads;
    ctx.command = "verify " + kind;

    if (kind == "main") {
        auto const zs = ctx.zeros();
        auto const spec = gbx::make_spec(o.N, o.H);
        auto const w = sieve_to(ctx, spec.last());
        auto const rw = gbx::r_window_fft(spec, w);
        std::vector<gbx::verification_report> rows{gbx::verify_main(spec, rw, zs, tol, threads)};
        if (o.ablation) {
            rows.push_back(gbx::verify_main(spec, rw, gbx::zero_set{}, tol, threads));
        }
        return report_rows(ctx, rows, &zs);
    }
    if (kind == "average") {
        auto const spec = gbx::make_spec(o.N, o.H);
        auto const w = sieve_to(ctx, spec.last());
        auto [a, b] = gbx::verify_average(spec, gbx::r_window_fft(spec, w), gbx::psi_table(w), tol);
        return report_rows(ctx, {a, b});
    }
    if (kind == "chain") {
        auto const spec = gbx::make_spec(o.N, o.H);
        auto const w = sieve_to(ctx, spec.last());
        return report_rows(ctx, {gbx::chain_consistency_check(spec, gbx::r_window_fft(spec, w), gbx::psi_table(w), tol)});
    }
    if (kind == "long") {
        auto const zs = ctx.zeros();
        auto const w = sieve_to(ctx, o.N);
        std::vector<gbx::verification_report> rows;
        auto [a, b] = gbx::verify_long_interval(o.N, w, zs, tol, threads);
        rows = {a, b};
        if (o.ablation) {
            auto [c, d] = gbx::verify_long_interval(o.N, w, gbx::zero_set{}, tol, threads);
            rows.push_back(c);
            rows.push_back(d);
        }
        return report_rows(ctx, rows, &zs);
    }
    if (kind == "lemma:psi") {
        auto const zs = ctx.zeros();
        auto const w = sieve_to(ctx, o.M);
        return report_rows(ctx, {gbx::verify_psi_formula(o.M, gbx::psi_table(w), zs, tol, threads)}, &zs);
    }
    if (kind == "lemma:pesato") {
        auto const zs = ctx.zeros();
        auto const w = sieve_to(ctx, o.N + o.H);
        return report_rows(ctx, {gbx::pesato_identity_check(o.N, o.H, zs, gbx::psi_table(w), tol, threads)}, &zs);
    }
    if (kind == "lemma:order") {
        auto const zs = ctx.zeros();
        return report_rows(ctx, {gbx::order_of_magnitude_check(o.N, o.H, zs, tol, threads)}, &zs);
    }
    if (kind == "lemma:residue") {
        auto const c = gbx::residue_check(o.n, o.N, tol.residue);
        return report_json_or_text(ctx, gbx::to_json(c), c.pass, integral_text(c));
    }
    if (kind == "lemma:mean-square") {
        auto const w = sieve_to(ctx, gbx::s_tilde_length(o.N, gbx::default_s_tilde_eps(o.N)));
        auto const c = gbx::mean_square_check(o.N, w, tol.mean_square_ratio);
        return report_json_or_text(ctx, gbx::to_json(c), c.pass, integral_text(c));
    }
    if (kind == "lemma:lp") {
        auto const w = sieve_to(ctx, gbx::s_tilde_length(o.N, gbx::default_s_tilde_eps(o.N)));
        auto const c = gbx::lp_bound_check(o.N, o.xi, w, tol.lp_ratio);
        return report_json_or_text(ctx, gbx::to_json(c), c.pass, integral_text(c));
    }
    if (kind == "lemma:decomposition") {
        std::int64_t const y = o.y.value_or(o.H);
        gbx::make_spec(o.N, o.H, y);
        auto const w = sieve_to(ctx, std::max(gbx::s_tilde_length(o.N, gbx::default_s_tilde_eps(o.N)), o.N + o.H));
        auto const d = gbx::i_decomposition_check(o.N, o.H, y, w, tol);
        gbx::json arr = gbx::json::array();
        std::string text;
        for (auto const & c : d.checks()) {
            arr.push_back(gbx::to_json(c));
            text += integral_text(c);
        }
        return report_json_or_text(ctx, gbx::json{{"checks", arr}, {"max_imaginary", gbx::detail::num(d.max_imaginary)}},
                                   d.pass, text);
    }
    if (kind == "lemma:t-bound") {
        std::int64_t const y = o.y.value_or(0);
        auto const t = gbx::t_bound_scan(o.N, o.H, y, o.samples, tol.t_bound, tol.t_sharpness);
        std::ostringstream s;
        s << "t-bound N=" << t.N << " H=" << t.H << " y=" << t.y << " samples=" << t.samples
          << "  first=" << gbx::fmt_real(t.ratio_first);
        if (t.second_applies) {
            s << " second=" << gbx::fmt_real(t.ratio_second);
        }
        if (t.sharpness_applies) {
            s << " sharpness=" << gbx::fmt_real(t.sharpness);
        }
        s << " threshold=" << gbx::fmt_real(t.threshold) << (t.pass ? " PASS" : " FAIL") << '\n';
        if (!ctx.cfg.output_dir.empty()) {
            std::filesystem::create_directories(ctx.cfg.output_dir);
            std::ofstream plot(std::filesystem::path(ctx.cfg.output_dir) / "t_bound.dat");
            gbx::write_t_plot(plot, o.N, o.H, y, o.samples);
        }
        return report_json_or_text(ctx, gbx::to_json(t), t.pass, s.str());
    }
    throw gbx::domain_error("verify: unknown check '" + kind
                            + "' (main, average, chain, long, lemma:psi, lemma:pesato, lemma:order, "
                              "lemma:residue, lemma:mean-square, lemma:lp, lemma:decomposition, lemma:t-bound)");
}

int cmd_campaign(context & ctx, std::vector<std::int64_t> const & ns, std::vector<std::string> const & families,
                 std::vector<std::string> const & pairs, std::vector<std::string> const & checks,
                 std::string const & plot_dir)
{
    auto & cfg = ctx.cfg;
    if (!ns.empty()) {
        cfg.n_values = ns;
    }
    if (!families.empty()) {
        gbx::apply_setting(cfg, "families", gbx::detail::join(families, ","));
    }
    if (!pairs.empty()) {
        gbx::apply_setting(cfg, "pairs", gbx::detail::join(pairs, ","));
    }
    if (!checks.empty()) {
        cfg.checks = checks;
    }
    if (ctx.opt.ablation) {
        cfg.ablation = true;
    }
    auto const cc = cfg.campaign();
    auto const points = gbx::campaign_points(cc);

    std::int64_t top = 2;
    for (auto const & p : points) {
        top = std::max(top, p.N + std::max<std::int64_t>(p.H, 0));
    }
    bool const needs_zeros = std::any_of(cc.checks.begin(), cc.checks.end(), [](auto const & c) {
        return c == "main" || c == "pesato" || c == "order";
    });
    gbx::zero_set zs;
    if (!points.empty() && needs_zeros) {
        zs = ctx.zeros();
    }
    auto const w = sieve_to(ctx, points.empty() ? 2 : top);
    auto const rep = gbx::grid_campaign(cc, w, zs);

    auto header = ctx.header(&zs);
    if (cfg.json) {
        emit(ctx, "json", gbx::campaign_json(header, rep).dump(2) + "\n");
    }
    if (cfg.csv) {
        std::ostringstream s;
        gbx::write_csv(s, header, rep.rows);
        emit(ctx, "csv", s.str());
    }
    if (!cfg.json && !cfg.csv) {
        for (auto const & r : rep.rows) {
            print_row(r);
        }
        for (auto const & t : rep.trends) {
            std::cout << "trend " << t.check << " [" << t.family << "] points=" << t.points
                      << " ratio_slope=" << gbx::fmt_real(t.ratio_slope) << " error_slope="
                      << gbx::fmt_real(t.error_slope) << " bound_slope=" << gbx::fmt_real(t.bound_slope)
                      << (t.pass ? " PASS" : " FAIL") << '\n';
        }
    }
    if (!plot_dir.empty() && !rep.rows.empty()) {
        gbx::emit_plotdata(rep.rows, plot_dir);
    }
    return rep.pass() ? exit_ok : exit_check;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"gbx: desk-scale numerical checks of the short-interval explicit formula for\n"
                 "Cesaro-weighted Goldbach sums"};
    app.require_subcommand(1);
    app.fallthrough();
    context ctx;
    auto & o = ctx.opt;

    app.add_option("--config", o.config_path, "key = value configuration file (flags override it)");
    app.add_option("--zeros", o.zeros, std::string("zero ordinate table; default from config, then $") + gbx::zeros_env);
    app.add_option("--max-zeros", o.max_zeros, "use at most this many ordinates (0 = all)");
    app.add_option("--threads", o.threads, "worker threads (default 1)");
    app.add_flag("--json", o.json, "emit a JSON report");
    app.add_flag("--csv", o.csv, "emit a CSV report");
    app.add_option("--out-dir", o.out_dir, "write reports into this directory instead of stdout");
    app.add_option("--tol", o.tol, "override a tolerance: name=value (repeatable)");

    // sieve
    std::uint64_t lo = 1;
    std::uint64_t hi = 0;
    std::string cache;
    std::string load;
    bool list = false;
    auto * sieve = app.add_subcommand("sieve", "sieve Lambda over [lo, hi], print psi(hi)");
    sieve->add_option("--lo", lo, "window start (default 1)");
    sieve->add_option("--hi", hi, "window end");
    sieve->add_option("--cache", cache, "save the window to this binary cache file");
    sieve->add_option("--load", load, "load a cached window instead of sieving");
    sieve->add_flag("--list", list, "print n and Lambda(n) for every prime power");

    // r
    std::string method = "fft";
    std::string r_csv;
    auto * r = app.add_subcommand("r", "print R(n), or R over the window [N-H, N+H] as CSV");
    r->add_option("--n", o.n, "single n (direct convolution)");
    r->add_option("--N", o.N, "window centre");
    r->add_option("--H", o.H, "window half-width");
    r->add_option("--method", method, "direct or fft")->check(CLI::IsMember({"direct", "fft"}));
    r->add_option("--out", r_csv, "CSV output file");

    // zeros
    auto * zeros = app.add_subcommand("zeros", "zero tables: validate, find, generate");
    zeros->require_subcommand(1);
    auto * zv = zeros->add_subcommand("validate", "load a table, check ordering and the zero count");
    zv->add_option("--file", o.zeros, "table to validate (same as --zeros)");
    zv->add_option("--max", o.max_zeros, "read at most this many ordinates");
    double step = 0.02;
    auto * zf = zeros->add_subcommand("find", "locate zeros below T <= 500 from sign changes of Hardy's Z");
    zf->add_option("--T", o.T, "height")->required();
    zf->add_option("--step", step, "scan step (<= 0.05)");
    std::size_t count = 0;
    std::string zout;
    int decimals = 9;
    auto * zg = zeros->add_subcommand("generate", "compute the first --count ordinates and write a table");
    zg->add_option("--count", count, "number of zeros")->required();
    zg->add_option("--out", zout, "output file")->required();
    zg->add_option("--decimals", decimals, "digits after the point (default 9)");

    // zero-sum
    auto * zsum = app.add_subcommand("zero-sum", "truncated sums over zeros");
    zsum->require_subcommand(1);
    auto * zp = zsum->add_subcommand("psi", "sum of 2 Re M^{rho+1}/(rho(rho+1))");
    zp->add_option("--M", o.M, "M > 1")->required();
    bool integral = false;
    bool descending = false;
    auto * zd = zsum->add_subcommand("second-diff", "the second-difference zero term S(N, H)");
    zd->add_option("--N", o.N)->required();
    zd->add_option("--H", o.H)->required();
    zd->add_flag("--integral", integral, "evaluate through the integral form");
    zd->add_flag("--descending", descending, "sum in descending ordinate order");

    // verify
    std::string kind;
    auto * verify = app.add_subcommand("verify", "run one check: main | average | chain | long | lemma:<id>");
    verify->add_option("check", kind,
                       "main, average, chain, long, lemma:psi, lemma:pesato, lemma:order, lemma:residue, "
                       "lemma:mean-square, lemma:lp, lemma:decomposition, lemma:t-bound")
        ->required();
    verify->add_option("--N", o.N, "N (or the sum length for long)");
    verify->add_option("--H", o.H, "H");
    verify->add_option("--y", o.y, "partial-window offset (decomposition, t-bound)");
    verify->add_option("--n", o.n, "n for lemma:residue");
    verify->add_option("--M", o.M, "M for lemma:psi");
    verify->add_option("--xi", o.xi, "arc half-width for lemma:lp");
    verify->add_option("--samples", o.samples, "alpha samples for lemma:t-bound (default 4000)");
    verify->add_flag("--ablation", o.ablation, "also report the check with the zero term removed");

    // campaign
    std::vector<std::int64_t> ns;
    std::vector<std::string> families;
    std::vector<std::string> pairs;
    std::vector<std::string> checks;
    std::string plot_dir;
    auto * campaign = app.add_subcommand("campaign", "run checks over an (N, H) grid with trend regressions");
    campaign->add_option("--N", ns, "N values")->delimiter(',');
    campaign->add_option("--families", families, "H families: sqrt, pow2_3, tenth, full")->delimiter(',');
    campaign->add_option("--pairs", pairs, "explicit N:H pairs")->delimiter(',');
    campaign->add_option("--checks", checks, "main, average, pesato, order, chain")->delimiter(',');
    campaign->add_flag("--ablation", o.ablation, "add main rows with the zero term removed");
    campaign->add_option("--plot-dir", plot_dir, "write gnuplot tables here");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const & e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const & e) {
        return app.exit(e);
    } catch (CLI::ParseError const & e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        resolve(ctx);
        if (sieve->parsed()) {
            ctx.command = "sieve";
            if (hi == 0 && load.empty()) {
                throw gbx::domain_error("sieve: --hi is required");
            }
            return cmd_sieve(ctx, lo, hi, cache, load, list);
        }
        if (r->parsed()) {
            ctx.command = "r";
            return cmd_r(ctx, method, r_csv);
        }
        if (zeros->parsed()) {
            if (zv->parsed()) {
                ctx.command = "zeros validate";
                if (o.max_zeros) {
                    ctx.cfg.max_zeros = *o.max_zeros;
                }
                return cmd_zeros_validate(ctx);
            }
            if (zf->parsed()) {
                ctx.command = "zeros find";
                return cmd_zeros_find(ctx, step);
            }
            ctx.command = "zeros generate";
            return cmd_zeros_generate(ctx, count, zout, decimals);
        }
        if (zsum->parsed()) {
            if (zp->parsed()) {
                ctx.command = "zero-sum psi";
                return cmd_zero_sum_psi(ctx);
            }
            ctx.command = "zero-sum second-diff";
            return cmd_zero_sum_second(ctx, integral, descending);
        }
        if (verify->parsed()) {
            return cmd_verify(ctx, kind);
        }
        ctx.command = "campaign";
        return cmd_campaign(ctx, ns, families, pairs, checks, plot_dir);
    } catch (gbx::domain_error const & e) {
        std::cerr << "gbx: usage: " << e.what() << '\n';
        return exit_usage;
    } catch (gbx::error const & e) {
        std::cerr << "gbx: " << e.what() << '\n';
        return exit_data;
    } catch (std::exception const & e) {
        std::cerr << "gbx: " << e.what() << '\n';
        return exit_data;
    }
}
