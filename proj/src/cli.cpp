#include "svadf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "svadf/bench.hpp"
#include "svadf/calibration.hpp"
#include "svadf/csv_io.hpp"
#include "svadf/dgp.hpp"
#include "svadf/error.hpp"
#include "svadf/inference.hpp"
#include "svadf/parallel.hpp"
#include "svadf/recursive.hpp"
#include "svadf/version.hpp"
#include "svadf/volatility.hpp"

namespace svadf::cli {

namespace fs = std::filesystem;

namespace {

struct InputOptions {
    std::vector<std::string> files;
    std::string date_col = "date";
    std::string price_col = "close";
    bool log_prices = false;
    std::size_t min_rows = kMinIngestRows;
};

struct PathOptions {
    double r0 = 0.1;
    std::string variant = "coefficient";
    std::size_t lags = 0;
    bool auto_lag = false;
    std::size_t max_lag = 6;
};

struct DatingOptions {
    std::string orig_rule = "log:10";
    std::string coll_rule = "log:2";
    std::size_t min_above = 0;
    std::size_t min_below = 0;
    std::size_t gap = 0;
    bool daily = false;
    bool no_arming = false;
    std::string pwy_rule;
};

std::string fmt(double v, int prec = 6) {
    std::ostringstream s;
    s << std::setprecision(prec) << v;
    return s.str();
}

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("inputs", in.files, "Price CSV files")->required();
    cmd->add_option("--date-col", in.date_col, "Date column name (empty: undated, file order)");
    cmd->add_option("--price-col", in.price_col, "Price column name");
    cmd->add_flag("--log", in.log_prices, "Analyze log prices instead of levels");
    cmd->add_option("--min-rows", in.min_rows, "Minimum number of data rows")->check(CLI::PositiveNumber);
}

void add_path_options(CLI::App* cmd, PathOptions& p) {
    cmd->add_option("--r0", p.r0, "Initial window fraction")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--variant", p.variant, "coefficient or ttype");
    cmd->add_option("--lags", p.lags, "ADF lag order");
    cmd->add_flag("--auto-lag", p.auto_lag, "Select the lag order on the full sample");
    cmd->add_option("--max-lag", p.max_lag, "Largest lag considered by --auto-lag");
}

void add_dating_options(CLI::App* cmd, DatingOptions& d) {
    cmd->add_option("--orig-rule", d.orig_rule, "Origination boundary: log:<d>, fixed:<v> or table:<csv>");
    cmd->add_option("--coll-rule", d.coll_rule, "Collapse boundary: log:<d>, fixed:<v> or table:<csv>");
    cmd->add_option("--min-above", d.min_above, "Observations the statistic must stay above the origination line");
    cmd->add_option("--min-below", d.min_below, "Observations the statistic must stay below the collapse line");
    cmd->add_option("--gap", d.gap, "Tolerated dip length inside --min-above");
    cmd->add_flag("--daily", d.daily, "Daily-data filter: 42 above with 5-day dips, 21 below");
    cmd->add_flag("--no-arming", d.no_arming, "Date collapse at the first point below the collapse line");
    cmd->add_option("--pwy-rule", d.pwy_rule, "Also run the single-threshold baseline with this boundary");
}

PriceSeries load(const std::string& file, const InputOptions& in) {
    IngestOptions opts;
    opts.date_column = in.date_col;
    opts.price_column = in.price_col;
    opts.min_rows = in.min_rows;
    PriceSeries s = ingest_csv(fs::path(file), opts);
    if (!in.log_prices) return s;
    PriceSeries logged = s.log();
    logged.set_label(s.label());
    return logged;
}

recursive::RecursiveConfig path_config(const PathOptions& p) {
    recursive::RecursiveConfig cfg;
    cfg.r0 = p.r0;
    cfg.variant = parse_variant(p.variant);
    cfg.lag_order = p.lags;
    cfg.auto_lag = p.auto_lag;
    cfg.max_lag = p.max_lag;
    return cfg;
}

dating::PersistenceFilter filter_of(const DatingOptions& d) {
    dating::PersistenceFilter f = d.daily ? dating::PersistenceFilter::daily_default() : dating::PersistenceFilter{};
    if (!d.daily) {
        f.min_above = d.min_above;
        f.min_below = d.min_below;
        f.consolidation_gap = d.gap;
    }
    f.require_arming = !d.no_arming;
    return f;
}

/// Runs fn on every input concurrently and prints the per-file outputs in input order.
template <class Fn>
void for_each_input(const InputOptions& in, std::ostream& out, Fn fn) {
    std::vector<std::string> blocks(in.files.size());
    parallel_for(in.files.size(), [&](std::size_t i) {
        std::ostringstream block;
        fn(load(in.files[i], in), block);
        blocks[i] = block.str();
    });
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i > 0) out << '\n';
        out << blocks[i];
    }
}

std::string describe_episode(const std::optional<dating::Episode>& ep) {
    if (!ep) return "none";
    std::ostringstream s;
    s << "r_e_hat=" << fmt(*ep->r_e_hat, 4);
    if (ep->origin_date) s << " (" << ep->origin_date->to_string() << ")";
    if (ep->ongoing) {
        s << ", ongoing";
    } else {
        s << ", r_f_hat=" << fmt(*ep->r_f_hat, 4);
        if (ep->collapse_date) s << " (" << ep->collapse_date->to_string() << ")";
    }
    s << ", max_stat=" << fmt(ep->max_stat, 4);
    return s.str();
}

struct TestResult {
    double statistic = 0.0;
    double threshold = 0.0;
    bool explosive = false;
};

TestResult full_sample_test(const PriceSeries& s, const PathOptions& p, const dating::ThresholdRule& rule) {
    const auto cfg = path_config(p);
    std::size_t lags = cfg.lag_order;
    if (cfg.auto_lag) {
        lags = estimator::select_lag(estimator::Window(s.values(), s.sample_size()), cfg.max_lag, cfg.lag_sig_level);
    }
    TestResult r;
    r.statistic = recursive::stat_at(s, s.sample_size(), cfg.variant, lags);
    r.threshold = dating::threshold_value(rule, s.sample_size(), 1.0);
    r.explosive = r.statistic > r.threshold;
    return r;
}

void print_test(std::ostream& o, const PriceSeries& s, const PathOptions& p, const dating::ThresholdRule& rule) {
    const TestResult r = full_sample_test(s, p, rule);
    o << "series: " << s.label() << '\n';
    o << "observations: " << s.size() << " (n = " << s.sample_size() << ")\n";
    o << "statistic (" << p.variant << "): " << fmt(r.statistic) << '\n';
    o << "threshold (" << rule.describe() << "): " << fmt(r.threshold) << '\n';
    o << "decision: " << (r.explosive ? "explosive evidence" : "no explosive evidence") << '\n';
}

void print_inference(std::ostream& o, const PriceSeries& s, double level) {
    try {
        const auto inf = inference::infer_root(s, level);
        o << "delta_hat: " << fmt(inf.delta_hat, 8) << "  " << fmt(100 * level, 4) << "% CI [" << fmt(inf.ci_delta.lo, 8)
          << ", " << fmt(inf.ci_delta.hi, 8) << "]\n";
        o << "gamma_hat: " << fmt(inf.gamma_hat, 6) << "  " << fmt(100 * level, 4) << "% CI [" << fmt(inf.ci_gamma.lo, 6)
          << ", " << fmt(inf.ci_gamma.hi, 6) << "]\n";
        o << "regime: " << inference::to_string(inf.regime) << " ("
          << (inf.regime == inference::Regime::Explosive ? "Cauchy" : "Normal") << " quantile)\n";
        o << "classification: " << inference::to_string(inf.classification()) << '\n';
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ExactUnitRoot) throw;
        o << "delta_hat: 1 (exact unit root; no interval)\n";
    }
}

PriceSeries window_of(const PriceSeries& s, const std::string& from, const std::string& to) {
    if (from.empty() && to.empty()) return s;
    if (!s.dated()) throw Error(ErrorKind::Usage, "--from/--to need a dated series");
    const auto& d = s.dates();
    const Date lo = from.empty() ? d.front() : Date::parse(from);
    const Date hi = to.empty() ? d.back() : Date::parse(to);
    const auto first = static_cast<std::size_t>(std::lower_bound(d.begin(), d.end(), lo) - d.begin());
    const auto end = static_cast<std::size_t>(std::upper_bound(d.begin(), d.end(), hi) - d.begin());
    if (first >= end || end - first < 2) throw Error(ErrorKind::Data, "date window holds fewer than two observations");
    PriceSeries out = s.slice(first, end - 1);
    out.set_label(s.label());
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    f << content;
    if (!f) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

void emit(const std::string& output, const std::string& content, std::ostream& out) {
    if (output.empty() || output == "-") {
        out << content;
    } else {
        write_file(output, content);
    }
}

double number_arg(const std::string& text, const char* what) {
    try {
        return parse_number(text, 0);
    } catch (const Error&) {
        throw Error(ErrorKind::Usage, std::string("cannot parse ") + what + " '" + text + "' as a number");
    }
}

dgp::VolSpec vol_from(const std::string& kind, double sigma0, double eta, const std::string& phi, double ag,
                      double bg) {
    switch (dgp::parse_vol_kind(kind)) {
        case dgp::VolKind::Constant: return dgp::VolSpec::constant(sigma0);
        case dgp::VolKind::LogAr1: {
            std::optional<double> p;
            if (!phi.empty() && phi != "iterated-log") p = number_arg(phi, "phi");
            return dgp::VolSpec::log_ar1(eta, p, sigma0);
        }
        case dgp::VolKind::Garch: return dgp::VolSpec::garch(ag, bg, sigma0);
    }
    throw Error(ErrorKind::InvalidSpec, "unknown volatility kind");
}

std::vector<Date> weekday_calendar(std::size_t count) {
    std::vector<Date> out;
    Date d = Date::from_ymd(2000, 1, 3);
    while (out.size() < count) {
        if (!d.is_weekend()) out.push_back(d);
        d = d.plus_days(1);
    }
    return out;
}

}  // namespace

dating::ThresholdRule parse_threshold(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorKind::Usage, "threshold '" + std::string(text) + "' must look like log:<d>, fixed:<v> or table:<csv>");
    }
    const std::string_view kind = text.substr(0, colon);
    const std::string arg(text.substr(colon + 1));
    dating::ThresholdRule rule;
    if (kind == "log") {
        rule = dating::ThresholdRule::log_rule(number_arg(arg, "log-rule divisor"));
    } else if (kind == "fixed") {
        rule = dating::ThresholdRule::fixed(number_arg(arg, "fixed threshold"));
    } else if (kind == "table") {
        std::ifstream f(arg);
        if (!f) throw Error(ErrorKind::Io, "cannot open calibration table '" + arg + "'");
        rule = dating::ThresholdRule::calibrated(calibration::read_csv(f));
    } else {
        throw Error(ErrorKind::Usage, "unknown threshold kind '" + std::string(kind) + "'");
    }
    rule.validate();
    return rule;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Volatility-robust recursive bubble detection", "svadf"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "INI file with one [section] per command; keys mirror the flags");
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string output;

    // simulate
    auto* sim = app.add_subcommand("simulate", "Simulate a price path and write it as CSV");
    std::map<std::string, std::string> dgp_kv;
    const char* dgp_keys[][2] = {{"n", "Transitions"},
                                 {"x0", "Initial level"},
                                 {"vol", "constant, logar1 or garch"},
                                 {"sigma0", "Initial volatility scale"},
                                 {"eta", "Log-volatility shock s.d."},
                                 {"phi", "Log-volatility persistence or iterated-log"},
                                 {"alpha-g", "GARCH ARCH weight"},
                                 {"beta-g", "GARCH GARCH weight"},
                                 {"re", "Bubble origination fraction"},
                                 {"rf", "Bubble collapse fraction"},
                                 {"c", "Bubble root scale"},
                                 {"alpha", "Bubble root rate"}};
    for (const auto& kv : dgp_keys) {
        const std::string key = kv[0];
        sim->add_option_function<std::string>(
            "--" + key, [&dgp_kv, key](const std::string& v) { dgp_kv[key] = v; }, kv[1]);
    }
    double reset_sd = -1.0;
    bool dated = false;
    sim->add_option("--seed", seed, "Random seed")->envname("SVADF_SEED");
    sim->add_option("--reset-sd", reset_sd, "Use the collapse-and-reset model with this reset s.d.");
    sim->add_flag("--dated", dated, "Attach consecutive weekday dates from 2000-01-03");
    sim->add_option("-o,--output", output, "Output CSV (default stdout)");

    // test
    auto* test = app.add_subcommand("test", "Full-sample statistic and explosive decision");
    InputOptions test_in;
    PathOptions test_path;
    std::string test_rule = "log:10";
    add_input_options(test, test_in);
    add_path_options(test, test_path);
    test->add_option("--threshold", test_rule, "Boundary at s = 1: log:<d>, fixed:<v> or table:<csv>");

    // datestamp
    auto* ds = app.add_subcommand("datestamp", "Recursive statistic path and episode dates");
    InputOptions ds_in;
    PathOptions ds_path;
    DatingOptions ds_dating;
    std::string out_dir = ".";
    add_input_options(ds, ds_in);
    add_path_options(ds, ds_path);
    add_dating_options(ds, ds_dating);
    ds->add_option("--out-dir", out_dir, "Directory for <label>_path.csv and <label>_episode.csv");

    // infer
    auto* inf = app.add_subcommand("infer", "Confidence intervals for the autoregressive root");
    InputOptions inf_in;
    double level = 0.95;
    std::string from, to;
    add_input_options(inf, inf_in);
    inf->add_option("--level", level, "Confidence level")->check(CLI::Range(0.0, 1.0));
    inf->add_option("--from", from, "First date of the estimation window");
    inf->add_option("--to", to, "Last date of the estimation window");

    // calibrate
    auto* cal = app.add_subcommand("calibrate", "Monte Carlo critical-value table");
    std::string hypothesis = "H0";
    std::vector<std::size_t> sizes = {500, 550, 600, 650, 700, 750, 800, 850, 900, 950, 1000};
    std::size_t replications = 1000;
    double q = -1.0;
    std::string cal_variant = "coefficient";
    std::string vol_kind = "constant", phi;
    double sigma0 = 1.0, eta = 0.0, alpha_g = 0.0, beta_g = 0.0;
    calibration::AlternativeDesign alt;
    cal->add_option("--hypothesis", hypothesis, "H0 or H1");
    cal->add_option("--sizes", sizes, "Sample sizes")->delimiter(',');
    cal->add_option("--B", replications, "Replications per size under H0");
    cal->add_option("--q", q, "Quantile level (default 0.9 under H0, 0.1 under H1)");
    cal->add_option("--variant", cal_variant, "coefficient or ttype");
    cal->add_option("--vol", vol_kind, "Null volatility: constant, logar1 or garch");
    cal->add_option("--sigma0", sigma0, "Null volatility scale");
    cal->add_option("--eta", eta, "Null log-volatility shock s.d.");
    cal->add_option("--phi", phi, "Null log-volatility persistence");
    cal->add_option("--alpha-g", alpha_g, "Null GARCH ARCH weight");
    cal->add_option("--beta-g", beta_g, "Null GARCH GARCH weight");
    cal->add_option("--outer", alt.outer_draws, "H1 nuisance draws per size");
    cal->add_option("--inner", alt.inner_reps, "H1 series per nuisance draw");
    cal->add_option("--seed", seed, "Random seed")->envname("SVADF_SEED");
    cal->add_option("-o,--output", output, "Output CSV (default stdout)");

    // bench
    auto* bn = app.add_subcommand("bench", "Simulation tables: power, accuracy, size, re-initialization gap");
    std::string preset = "table2";
    std::size_t bench_n = 1000;
    std::size_t bench_b = 500;
    std::size_t min_below = bench::Rules::default_filter().min_below;
    std::string bench_table;
    bn->add_option("--table", preset, "table2, table3, table4, null or gap")
        ->check(CLI::IsMember({"table2", "table3", "table4", "null", "gap"}));
    bn->add_option("--n", bench_n, "Sample size");
    bn->add_option("--B", bench_b, "Replications per cell");
    bn->add_option("--min-below", min_below, "Collapse persistence in observations");
    bn->add_option("--pwy-rule", bench_table, "Baseline boundary (default: calibrated homoskedastic 90% quantile)");
    bn->add_option("--seed", seed, "Random seed")->envname("SVADF_SEED");
    bn->add_option("-o,--output", output, "Output CSV");

    // report
    auto* rep = app.add_subcommand("report", "Combined text summary per series");
    InputOptions rep_in;
    PathOptions rep_path;
    DatingOptions rep_dating;
    std::size_t vol_window = kDefaultVolWindow;
    add_input_options(rep, rep_in);
    add_path_options(rep, rep_path);
    add_dating_options(rep, rep_dating);
    rep->add_option("--level", level, "Confidence level")->check(CLI::Range(0.0, 1.0));
    rep->add_option("--vol-window", vol_window, "Rolling volatility window");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error[" << to_string(ErrorKind::Usage) << "]: " << e.what() << '\n';
        return 2;
    }

    try {
        if (sim->parsed()) {
            dgp_kv["seed"] = std::to_string(seed);
            if (!dgp_kv.count("n")) dgp_kv["n"] = "1000";
            const dgp::DgpSpec spec = dgp::from_key_values(dgp_kv);
            PriceSeries s = reset_sd >= 0.0 ? dgp::simulate_pwy_reinit(spec, reset_sd) : dgp::simulate(spec);
            if (dated) s = PriceSeries(std::vector<double>(s.values().begin(), s.values().end()), weekday_calendar(s.size()));
            std::ostringstream csv;
            write_series_csv(csv, s, seed);
            emit(output, csv.str(), out);
        } else if (test->parsed()) {
            const auto rule = parse_threshold(test_rule);
            for_each_input(test_in, out, [&](const PriceSeries& s, std::ostream& o) { print_test(o, s, test_path, rule); });
        } else if (ds->parsed()) {
            const auto orig = parse_threshold(ds_dating.orig_rule);
            const auto coll = parse_threshold(ds_dating.coll_rule);
            const auto pwy = ds_dating.pwy_rule.empty() ? std::optional<dating::ThresholdRule>{}
                                                        : parse_threshold(ds_dating.pwy_rule);
            const auto cfg = path_config(ds_path);
            const auto filter = filter_of(ds_dating);
            for_each_input(ds_in, out, [&](const PriceSeries& s, std::ostream& o) {
                const auto path = recursive::recursive_path(s, cfg);
                auto ep = dating::datestamp(path, orig, coll, filter);
                std::vector<dating::Episode> eps;
                if (ep) {
                    dating::attach_dates(*ep, s);
                    eps.push_back(*ep);
                }
                std::optional<dating::Episode> pwy_ep;
                if (pwy) {
                    pwy_ep = dating::datestamp_pwy(path, *pwy);
                    if (pwy_ep) {
                        dating::attach_dates(*pwy_ep, s);
                        pwy_ep->label = s.label() + " (pwy)";
                        eps.push_back(*pwy_ep);
                    }
                }
                const fs::path base = fs::path(out_dir) / s.label();
                std::ostringstream path_csv, ep_csv;
                write_path_csv(path_csv, path, s, orig, coll);
                write_episode_csv(ep_csv, eps);
                write_file(base.string() + "_path.csv", path_csv.str());
                write_file(base.string() + "_episode.csv", ep_csv.str());
                o << "series: " << s.label() << '\n';
                o << "path rows: " << path.size() << " (r0 = " << cfg.r0 << ", lags = " << path.lag_order << ")\n";
                o << "episode: " << describe_episode(ep) << '\n';
                if (pwy) o << "pwy episode: " << describe_episode(pwy_ep) << '\n';
                o << "wrote: " << base.string() << "_path.csv, " << base.string() << "_episode.csv\n";
            });
        } else if (inf->parsed()) {
            for_each_input(inf_in, out, [&](const PriceSeries& s, std::ostream& o) {
                const PriceSeries w = window_of(s, from, to);
                o << "series: " << s.label() << '\n';
                o << "observations: " << w.size() << (w.dated() ? " (" + w.dates().front().to_string() + " to " +
                                                                      w.dates().back().to_string() + ")"
                                                                : std::string())
                  << '\n';
                print_inference(o, w, level);
            });
        } else if (cal->parsed()) {
            const Variant variant = parse_variant(cal_variant);
            const auto hyp = calibration::parse_hypothesis(hypothesis);
            calibration::CalibrationTable table;
            if (hyp == calibration::Hypothesis::NullUnitRoot) {
                table = calibration::calibrate_null(sizes, replications, q < 0 ? 0.9 : q,
                                                    vol_from(vol_kind, sigma0, eta, phi, alpha_g, beta_g), variant, seed);
            } else {
                table = calibration::calibrate_alternative(sizes, q < 0 ? 0.1 : q, alt, variant, seed);
            }
            std::ostringstream csv;
            calibration::write_csv(csv, table);
            emit(output, csv.str(), out);
            if (!output.empty() && output != "-") {
                for (std::size_t i = 0; i < table.sizes.size(); ++i) {
                    out << table.sizes[i] << ' ' << fmt(table.values[i]) << '\n';
                }
                std::string fit = "undefined (nonpositive slope)";
                try {
                    fit = fmt(calibration::fit_log_divisor(table), 4);
                } catch (const Error&) {
                }
                out << "log-rule divisor fit: " << fit << '\n';
            }
        } else if (bn->parsed()) {
            std::ostringstream csv;
            if (preset == "gap") {
                std::vector<std::size_t> ns;
                for (std::size_t k = 50; k <= 500; k += 50) ns.push_back(k);
                const auto pts = bench::run_reinit_gap(ns, bench_b, bench::GapDesign{}, seed);
                bench::write_gap_csv(csv, pts, seed);
                for (const auto& p : pts) {
                    out << p.regime << " n=" << p.n << " log mean gap=" << fmt(std::log(p.mean_gap), 4)
                        << " reset gap=" << fmt(p.mean_pwy_gap, 4) << '\n';
                }
                for (const auto& r : bench::GapDesign{}.regimes) {
                    out << r.first << " slope on sqrt(n): " << fmt(bench::gap_growth_slope(pts, r.first), 4) << '\n';
                }
            } else {
                bench::ExperimentGrid grid;
                grid.designs = preset == "table2"   ? bench::table2_designs(bench_n)
                               : preset == "table3" ? bench::table3_designs(bench_n)
                               : preset == "table4" ? bench::table4_designs(bench_n)
                                                    : bench::null_designs(bench_n);
                grid.replications = bench_b;
                grid.seed = seed;
                grid.rules.filter.min_below = min_below;
                if (!bench_table.empty()) grid.rules.pwy = parse_threshold(bench_table);
                const auto cells = bench::run_power(grid);
                bench::write_results_csv(csv, cells, seed);
                out << bench::format_table(cells);
            }
            if (!output.empty()) write_file(output, csv.str());
        } else if (rep->parsed()) {
            const auto orig = parse_threshold(rep_dating.orig_rule);
            const auto coll = parse_threshold(rep_dating.coll_rule);
            const auto cfg = path_config(rep_path);
            const auto filter = filter_of(rep_dating);
            for_each_input(rep_in, out, [&](const PriceSeries& s, std::ostream& o) {
                o << "== " << s.label() << " ==\n";
                o << "observations: " << s.size();
                if (s.dated()) o << " (" << s.dates().front().to_string() << " to " << s.dates().back().to_string() << ")";
                o << '\n';
                const TestResult t = full_sample_test(s, rep_path, orig);
                o << "full-sample statistic: " << fmt(t.statistic) << " vs " << fmt(t.threshold) << " -> "
                  << (t.explosive ? "explosive evidence" : "no explosive evidence") << '\n';
                const auto path = recursive::recursive_path(s, cfg);
                auto ep = dating::datestamp(path, orig, coll, filter);
                if (ep) dating::attach_dates(*ep, s);
                o << "episode: " << describe_episode(ep) << '\n';
                print_inference(o, s, level);
                if (s.size() > vol_window) {
                    try {
                        const auto vol = rolling_volatility(s, vol_window);
                        double sum = 0.0;
                        std::size_t k = 0;
                        for (const auto& v : vol) {
                            if (v) {
                                sum += *v;
                                ++k;
                            }
                        }
                        o << "rolling volatility (" << vol_window << "): mean " << fmt(sum / static_cast<double>(k), 4)
                          << ", last " << fmt(*vol.back(), 4) << '\n';
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::Domain) throw;
                        o << "rolling volatility: undefined (nonpositive prices)\n";
                    }
                }
            });
        }
    } catch (const Error& e) {
        err << "error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error[" << to_string(ErrorKind::Io) << "]: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace svadf::cli
