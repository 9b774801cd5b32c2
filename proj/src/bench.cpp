#include "svadf/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "svadf/calibration.hpp"
#include "svadf/csv_io.hpp"
#include "svadf/error.hpp"
#include "svadf/parallel.hpp"

namespace svadf::bench {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Outcome {
    bool failed = false;
    bool detected = false;
    double r_e = 0.0;
    double r_f = 1.0;
    bool has_collapse = false;
};

struct Replication {
    Outcome svadf;
    Outcome pwy;
};

Outcome outcome(const std::optional<dating::Episode>& ep) {
    Outcome o;
    if (!ep) return o;
    o.detected = true;
    o.r_e = *ep->r_e_hat;
    if (ep->r_f_hat) {
        o.r_f = *ep->r_f_hat;
        o.has_collapse = true;
    }
    return o;
}

MethodStats summarize(const std::vector<Outcome>& outs, const Design& d, const Tolerance& tol) {
    MethodStats s;
    std::size_t ok = 0, orig = 0, coll = 0;
    double sum_re = 0.0, sum_rf = 0.0, se_re = 0.0, se_rf = 0.0;
    for (const auto& o : outs) {
        if (o.failed) {
            ++s.failures;
            continue;
        }
        ++ok;
        if (!o.detected) continue;
        ++s.detections;
        sum_re += o.r_e;
        sum_rf += o.r_f;
        if (!d.bubble) continue;
        const double e_re = o.r_e - d.bubble->r_e;
        const double e_rf = o.r_f - d.bubble->r_f;
        se_re += e_re * e_re;
        se_rf += e_rf * e_rf;
        if (std::fabs(e_re) <= tol.origin) {
            ++orig;
            if (o.has_collapse && std::fabs(e_rf) <= tol.collapse) ++coll;
        }
    }
    const double n_ok = static_cast<double>(ok);
    const double n_det = static_cast<double>(s.detections);
    if (!d.bubble) {
        s.orig_rate = ok ? n_det / n_ok : kNaN;
        s.coll_rate = kNaN;
        s.mean_re = s.detections ? sum_re / n_det : kNaN;
        s.mean_rf = s.detections ? sum_rf / n_det : kNaN;
        s.mse_re = s.mse_rf = kNaN;
        return s;
    }
    s.orig_rate = ok ? static_cast<double>(orig) / n_ok : kNaN;
    s.coll_rate = ok ? static_cast<double>(coll) / n_ok : kNaN;
    s.mean_re = s.detections ? sum_re / n_det : kNaN;
    s.mean_rf = s.detections ? sum_rf / n_det : kNaN;
    s.mse_re = s.detections ? se_re / n_det : kNaN;
    s.mse_rf = s.detections ? se_rf / n_det : kNaN;
    return s;
}

std::vector<CellResult> run_grid(const ExperimentGrid& grid) {
    grid.validate();
    const std::size_t cells = grid.designs.size();
    const std::size_t reps = grid.replications;

    std::map<std::size_t, dating::ThresholdRule> pwy_rules;
    for (const auto& d : grid.designs) {
        if (pwy_rules.count(d.n)) continue;
        pwy_rules.emplace(d.n, grid.rules.pwy ? *grid.rules.pwy
                                              : pwy_default_rule(d.n, grid.path.r0, derive_seed(grid.seed, 0xCA11B)));
    }

    std::vector<Replication> results(cells * reps);
    parallel_for(cells * reps, [&](std::size_t k) {
        const std::size_t cell = k / reps;
        const Design& d = grid.designs[cell];
        dgp::DgpSpec spec;
        spec.n = d.n;
        spec.bubble = d.bubble;
        spec.vol = d.vol;
        spec.seed = derive_seed(derive_seed(grid.seed, cell), k % reps);
        Replication& out = results[k];
        try {
            const PriceSeries series = dgp::simulate(spec);
            const auto path = recursive::recursive_path(series, grid.path);
            out.svadf = outcome(dating::datestamp(path, grid.rules.svadf_orig, grid.rules.svadf_coll, grid.rules.filter));
            out.pwy = outcome(dating::datestamp_pwy(path, pwy_rules.at(d.n)));
        } catch (const Error&) {
            out.svadf.failed = out.pwy.failed = true;
        }
    });

    std::vector<CellResult> out;
    out.reserve(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        std::vector<Outcome> sv, pw;
        sv.reserve(reps);
        pw.reserve(reps);
        for (std::size_t r = 0; r < reps; ++r) {
            sv.push_back(results[c * reps + r].svadf);
            pw.push_back(results[c * reps + r].pwy);
        }
        CellResult cr;
        cr.design = grid.designs[c];
        cr.replications = reps;
        cr.seed = grid.seed;
        cr.svadf = summarize(sv, cr.design, grid.tolerance);
        cr.pwy = summarize(pw, cr.design, grid.tolerance);
        out.push_back(std::move(cr));
    }
    return out;
}

Design bubble_design(std::string name, std::size_t n, double re, double rf, double c, double alpha,
                     dgp::VolSpec vol) {
    Design d;
    d.name = std::move(name);
    d.n = n;
    d.bubble = dgp::BubbleSpec{re, rf, c, alpha};
    d.vol = vol;
    return d;
}

std::string fmt(double v, int prec = 3) {
    if (std::isnan(v)) return "-";
    std::ostringstream s;
    s << std::fixed << std::setprecision(prec) << v;
    return s.str();
}

}  // namespace

dating::PersistenceFilter Rules::default_filter() {
    dating::PersistenceFilter f;
    f.min_below = 21;
    return f;
}

void ExperimentGrid::validate() const {
    if (designs.empty()) throw Error(ErrorKind::InvalidSpec, "experiment grid has no designs");
    if (replications < kMinGridReplications) throw Error(ErrorKind::InvalidSpec, "experiment grid needs B >= 50");
    for (const auto& d : designs) {
        dgp::DgpSpec spec;
        spec.n = d.n;
        spec.bubble = d.bubble;
        spec.vol = d.vol;
        spec.validate();
    }
    rules.svadf_orig.validate();
    rules.svadf_coll.validate();
    if (rules.pwy) rules.pwy->validate();
    if (!(tolerance.origin >= 0.0 && tolerance.collapse >= 0.0)) {
        throw Error(ErrorKind::InvalidSpec, "identification tolerances must be nonnegative");
    }
    recursive::initial_window(designs.front().n, path.r0);
}

std::string_view to_string(Method m) noexcept { return m == Method::SvAdf ? "svadf" : "pwy"; }

std::vector<CellResult> run_power(const ExperimentGrid& grid) { return run_grid(grid); }

std::vector<CellResult> run_accuracy(const ExperimentGrid& grid) { return run_grid(grid); }

dating::ThresholdRule pwy_default_rule(std::size_t n, double r0, std::uint64_t seed, std::size_t replications) {
    const std::size_t lo = std::max<std::size_t>(dgp::kMinSampleSize, recursive::initial_window(n, r0));
    std::vector<std::size_t> sizes;
    constexpr int kSteps = 8;
    for (int k = 0; k <= kSteps; ++k) {
        const double v = static_cast<double>(lo) *
                         std::pow(static_cast<double>(n) / static_cast<double>(lo), static_cast<double>(k) / kSteps);
        const auto s = static_cast<std::size_t>(std::lround(v));
        if (sizes.empty() || s > sizes.back()) sizes.push_back(s);
    }
    auto table = calibration::calibrate_null(sizes, replications, 0.90, dgp::VolSpec::constant(1.0),
                                             Variant::Coefficient, seed);
    return dating::ThresholdRule::calibrated(std::move(table));
}

std::vector<GapPoint> run_reinit_gap(const std::vector<std::size_t>& ns, std::size_t replications,
                                     const GapDesign& design, std::uint64_t seed) {
    if (ns.empty() || replications == 0) throw Error(ErrorKind::InvalidSpec, "gap experiment needs sizes and B > 0");
    if (!(design.x_reset_sd >= 0.0)) throw Error(ErrorKind::InvalidSpec, "reset s.d. must be nonnegative");
    const std::size_t cells = design.regimes.size() * ns.size();
    std::vector<double> gap(cells * replications), pwy_gap(cells * replications);
    parallel_for(cells * replications, [&](std::size_t k) {
        const std::size_t cell = k / replications;
        const auto& regime = design.regimes[cell / ns.size()];
        dgp::DgpSpec spec;
        spec.n = ns[cell % ns.size()];
        spec.bubble = design.bubble;
        spec.vol = regime.second;
        spec.seed = derive_seed(derive_seed(seed, cell), k % replications);
        const std::size_t te = design.bubble.origin_index(spec.n);
        const std::size_t tf = design.bubble.collapse_index(spec.n);
        const PriceSeries plain = dgp::simulate(spec);
        const auto x = plain.values();
        gap[k] = std::fabs(x[tf] - x[te]);
        const PriceSeries reset = dgp::simulate_pwy_reinit(spec, design.x_reset_sd);
        const auto y = reset.values();
        pwy_gap[k] = tf + 1 < y.size() ? std::fabs(y[tf + 1] - y[te]) : kNaN;
    });
    std::vector<GapPoint> out;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        GapPoint p;
        p.regime = design.regimes[cell / ns.size()].first;
        p.n = ns[cell % ns.size()];
        for (std::size_t r = 0; r < replications; ++r) {
            p.mean_gap += gap[cell * replications + r];
            p.mean_pwy_gap += pwy_gap[cell * replications + r];
        }
        p.mean_gap /= static_cast<double>(replications);
        p.mean_pwy_gap /= static_cast<double>(replications);
        out.push_back(p);
    }
    return out;
}

double gap_growth_slope(const std::vector<GapPoint>& points, const std::string& regime) {
    std::vector<double> xs, ys;
    for (const auto& p : points) {
        if (p.regime != regime) continue;
        xs.push_back(std::sqrt(static_cast<double>(p.n)));
        ys.push_back(std::log(p.mean_gap));
    }
    if (xs.size() < 2) throw Error(ErrorKind::InvalidSpec, "slope needs two sizes for regime '" + regime + "'");
    const double k = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / k;
        my += ys[i] / k;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

std::vector<Design> table2_designs(std::size_t n) {
    const std::pair<double, double> cells[] = {{0.2, 0.50}, {0.2, 0.65}, {0.2, 0.75}, {0.3, 0.50}, {0.3, 0.65},
                                               {0.3, 0.75}, {0.4, 0.65}, {0.4, 0.75}, {0.5, 0.65}, {0.5, 0.75}};
    std::vector<Design> out;
    for (const auto& [re, rf] : cells) {
        std::ostringstream name;
        name << "re=" << re << " rf=" << rf;
        out.push_back(bubble_design(name.str(), n, re, rf, 1.0, 0.5, dgp::VolSpec::log_ar1(0.5)));
    }
    return out;
}

std::vector<Design> table3_designs(std::size_t n) {
    using dgp::VolSpec;
    return {
        bubble_design("homoskedastic c=0.3", n, 0.3, 0.6, 0.3, 0.5, VolSpec::constant(1.0)),
        bubble_design("homoskedastic c=0.5", n, 0.3, 0.6, 0.5, 0.5, VolSpec::constant(1.0)),
        bubble_design("homoskedastic c=1.0", n, 0.3, 0.6, 1.0, 0.5, VolSpec::constant(1.0)),
        bubble_design("logar1 c=0.3 eta=0.1", n, 0.3, 0.6, 0.3, 0.5, VolSpec::log_ar1(0.1)),
        bubble_design("logar1 c=0.5 eta=0.5", n, 0.3, 0.6, 0.5, 0.5, VolSpec::log_ar1(0.5)),
        bubble_design("logar1 c=1.0 eta=1.0", n, 0.3, 0.6, 1.0, 0.5, VolSpec::log_ar1(1.0)),
        bubble_design("garch c=0.3 a=0.05 b=0.94", n, 0.3, 0.6, 0.3, 0.5, VolSpec::garch(0.05, 0.94)),
        bubble_design("garch c=0.5 a=0.10 b=0.89", n, 0.3, 0.6, 0.5, 0.5, VolSpec::garch(0.10, 0.89)),
        bubble_design("garch c=1.0 a=0.05 b=0.94", n, 0.3, 0.6, 1.0, 0.5, VolSpec::garch(0.05, 0.94)),
    };
}

std::vector<Design> table4_designs(std::size_t n) {
    struct Row {
        double re, rf, alpha;
    };
    const Row rows[] = {{0.2, 0.50, 0.3}, {0.2, 0.65, 0.3}, {0.3, 0.50, 0.3}, {0.4, 0.50, 0.5},
                        {0.4, 0.65, 0.5}, {0.4, 0.75, 0.5}, {0.5, 0.65, 0.7}, {0.4, 0.65, 1.0}};
    std::vector<Design> out;
    for (const auto& r : rows) {
        std::ostringstream name;
        name << "re=" << r.re << " rf=" << r.rf << " alpha=" << r.alpha;
        out.push_back(bubble_design(name.str(), n, r.re, r.rf, 1.0, r.alpha, dgp::VolSpec::log_ar1(0.5)));
    }
    return out;
}

std::vector<Design> null_designs(std::size_t n) {
    using dgp::VolSpec;
    std::vector<Design> out;
    for (const auto& [name, vol] : {std::pair{"null constant", VolSpec::constant(1.0)},
                                    std::pair{"null logar1", VolSpec::log_ar1(0.5)},
                                    std::pair{"null garch", VolSpec::garch(0.05, 0.94)}}) {
        Design d;
        d.name = name;
        d.n = n;
        d.vol = vol;
        out.push_back(d);
    }
    return out;
}

void write_results_csv(std::ostream& out, const std::vector<CellResult>& cells, std::uint64_t seed) {
    out << provenance_line(seed) << '\n';
    out << "name,n,r_e,r_f,c,alpha,vol,eta,alpha_g,beta_g,method,orig_rate,coll_rate,mean_re,mean_rf,mse_re,"
           "mse_rf,detections,failures,B,seed\n";
    for (const auto& cell : cells) {
        const Design& d = cell.design;
        for (Method m : {Method::SvAdf, Method::Pwy}) {
            const MethodStats& s = cell.stats(m);
            out << '"' << d.name << "\"," << d.n << ',';
            if (d.bubble) {
                out << format_number(d.bubble->r_e) << ',' << format_number(d.bubble->r_f) << ','
                    << format_number(d.bubble->c) << ',' << format_number(d.bubble->alpha) << ',';
            } else {
                out << ",,,,";
            }
            out << dgp::to_string(d.vol.kind) << ',' << format_number(d.vol.eta) << ','
                << format_number(d.vol.alpha_g) << ',' << format_number(d.vol.beta_g) << ',' << to_string(m) << ','
                << format_number(s.orig_rate) << ',' << format_number(s.coll_rate) << ','
                << format_number(s.mean_re) << ',' << format_number(s.mean_rf) << ',' << format_number(s.mse_re)
                << ',' << format_number(s.mse_rf) << ',' << s.detections << ',' << s.failures << ','
                << cell.replications << ',' << cell.seed << '\n';
        }
    }
}

void write_gap_csv(std::ostream& out, const std::vector<GapPoint>& points, std::uint64_t seed) {
    out << provenance_line(seed) << '\n';
    out << "regime,n,mean_gap,log_mean_gap,mean_pwy_gap\n";
    for (const auto& p : points) {
        out << p.regime << ',' << p.n << ',' << format_number(p.mean_gap) << ','
            << format_number(std::log(p.mean_gap)) << ',' << format_number(p.mean_pwy_gap) << '\n';
    }
}

std::string format_table(const std::vector<CellResult>& cells) {
    std::ostringstream out;
    std::size_t width = 6;
    for (const auto& c : cells) width = std::max(width, c.design.name.size());
    out << std::left << std::setw(static_cast<int>(width)) << "design" << std::right << " | " << std::setw(6)
        << "orig" << std::setw(7) << "coll" << std::setw(8) << "re_hat" << std::setw(8) << "rf_hat" << std::setw(8)
        << "mse_re" << std::setw(8) << "mse_rf" << " | " << std::setw(6) << "orig" << std::setw(7) << "coll"
        << std::setw(8) << "re_hat" << std::setw(8) << "rf_hat" << std::setw(8) << "mse_re" << std::setw(8)
        << "mse_rf" << '\n';
    out << std::string(width, ' ') << " | SV-ADF" << std::string(39, ' ') << " | PWY\n";
    for (const auto& c : cells) {
        out << std::left << std::setw(static_cast<int>(width)) << c.design.name << std::right;
        for (Method m : {Method::SvAdf, Method::Pwy}) {
            const MethodStats& s = c.stats(m);
            out << " | " << std::setw(6) << fmt(s.orig_rate) << std::setw(7) << fmt(s.coll_rate) << std::setw(8)
                << fmt(s.mean_re) << std::setw(8) << fmt(s.mean_rf) << std::setw(8) << fmt(s.mse_re, 4)
                << std::setw(8) << fmt(s.mse_rf, 4);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace svadf::bench
