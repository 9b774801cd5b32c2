#include "svadf/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "svadf/csv_io.hpp"
#include "svadf/error.hpp"
#include "svadf/parallel.hpp"
#include "svadf/quantile.hpp"
#include "svadf/version.hpp"

namespace svadf {

unsigned default_workers() {
    if (const char* env = std::getenv("SVADF_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace svadf

namespace svadf::calibration {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidSpec, msg); }

void check_sizes(std::span<const std::size_t> sizes) {
    if (sizes.empty()) invalid("calibration needs at least one sample size");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < dgp::kMinSampleSize) invalid("calibration sample sizes must be >= 20");
        if (i > 0 && sizes[i] <= sizes[i - 1]) invalid("calibration sample sizes must be strictly increasing");
    }
}

void check_level(double q) {
    if (!(q > 0.0 && q < 1.0)) invalid("quantile level must lie in (0, 1)");
}

double full_sample_statistic(const dgp::DgpSpec& spec, Variant variant) {
    const PriceSeries series = dgp::simulate(spec);
    return recursive::stat_at(series, series.sample_size(), variant);
}

// Replication streams are keyed by (size index, replication), so adding sizes
// to a grid leaves existing rows unchanged.
std::uint64_t cell_seed(std::uint64_t seed, std::size_t size_index, std::size_t rep) {
    return derive_seed(derive_seed(seed, size_index), rep);
}

}  // namespace

std::string_view to_string(Hypothesis h) noexcept {
    return h == Hypothesis::NullUnitRoot ? "H0" : "H1";
}

Hypothesis parse_hypothesis(std::string_view text) {
    if (text == "H0" || text == "null") return Hypothesis::NullUnitRoot;
    if (text == "H1" || text == "alt" || text == "alternative") return Hypothesis::AlternativeRandomized;
    invalid("unknown hypothesis '" + std::string(text) + "'");
}

void CalibrationTable::validate() const {
    check_sizes(sizes);
    check_level(quantile_level);
    if (values.size() != sizes.size()) invalid("calibration table has mismatched columns");
    for (double v : values) {
        if (!std::isfinite(v)) invalid("calibration table holds a non-finite value");
    }
    if (replications < kMinReplications) invalid("calibration table needs B >= 100");
}

double CalibrationTable::value_at(double n) const {
    if (sizes.empty()) invalid("empty calibration table");
    if (n <= static_cast<double>(sizes.front())) return values.front();
    if (n >= static_cast<double>(sizes.back())) return values.back();
    const auto it = std::upper_bound(sizes.begin(), sizes.end(), n,
                                     [](double v, std::size_t s) { return v < static_cast<double>(s); });
    const std::size_t hi = static_cast<std::size_t>(it - sizes.begin());
    const double n0 = static_cast<double>(sizes[hi - 1]);
    const double n1 = static_cast<double>(sizes[hi]);
    const double w = (n - n0) / (n1 - n0);
    return values[hi - 1] + w * (values[hi] - values[hi - 1]);
}

CalibrationTable calibrate_null(std::span<const std::size_t> sizes, std::size_t replications, double q,
                                const dgp::VolSpec& vol, Variant variant, std::uint64_t seed) {
    check_sizes(sizes);
    check_level(q);
    if (replications < kMinReplications) invalid("calibration needs B >= 100");
    vol.validate();

    CalibrationTable table;
    table.hypothesis = Hypothesis::NullUnitRoot;
    table.variant = variant;
    table.sizes.assign(sizes.begin(), sizes.end());
    table.quantile_level = q;
    table.replications = replications;
    table.seed = seed;

    const std::size_t cells = sizes.size() * replications;
    std::vector<double> stats(cells);
    parallel_for(cells, [&](std::size_t k) {
        const std::size_t si = k / replications;
        dgp::DgpSpec spec;
        spec.n = sizes[si];
        spec.vol = vol;
        spec.seed = cell_seed(seed, si, k % replications);
        stats[k] = full_sample_statistic(spec, variant);
    });
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const std::span<const double> block(stats.data() + si * replications, replications);
        table.values.push_back(empirical_quantile(block, q));
    }
    return table;
}

void NuisanceSampler::validate() const {
    auto range = [](double lo, double hi, const char* name) {
        if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
            invalid(std::string("nuisance range for ") + name + " is empty");
        }
    };
    range(r_e_lo, r_e_hi, "r_e");
    range(c_lo, c_hi, "c");
    range(alpha_lo, alpha_hi, "alpha");
    range(eta_lo, eta_hi, "eta");
    range(scale_lo, scale_hi, "scale");
    if (!(r_e_lo > 0.0)) invalid("r_e range must be positive");
    if (!(min_gap > 0.0) || !(r_e_hi + min_gap < r_f_hi) || !(r_f_hi <= 1.0)) {
        invalid("r_f range is empty: need r_e_hi + min_gap < r_f_hi <= 1");
    }
    if (!(c_lo > 0.0)) invalid("c range must be positive");
    if (!(alpha_lo > 0.0 && alpha_hi < 1.0)) invalid("alpha range must lie inside (0, 1)");
    if (!(eta_lo >= 0.0)) invalid("eta range must be nonnegative");
    if (!(scale_lo > 0.0)) invalid("scale range must be positive");
}

dgp::DgpSpec NuisanceSampler::draw(std::size_t n, Rng& rng) const {
    dgp::BubbleSpec b;
    b.r_e = rng.uniform(r_e_lo, r_e_hi);
    b.r_f = rng.uniform(b.r_e + min_gap, r_f_hi);
    b.c = rng.uniform(c_lo, c_hi);
    b.alpha = rng.uniform(alpha_lo, alpha_hi);
    const double eta = rng.uniform(eta_lo, eta_hi);
    const double scale = rng.uniform(scale_lo, scale_hi);

    dgp::DgpSpec spec;
    spec.n = n;
    spec.bubble = b;
    spec.vol = dgp::VolSpec::log_ar1(eta, std::nullopt, scale);
    return spec;
}

CalibrationTable calibrate_alternative(std::span<const std::size_t> sizes, double q,
                                       const AlternativeDesign& design, Variant variant,
                                       std::uint64_t seed) {
    check_sizes(sizes);
    check_level(q);
    design.sampler.validate();
    const std::size_t outer = design.outer_draws;
    const std::size_t inner = design.inner_reps;
    if (outer == 0 || inner < 2) invalid("alternative calibration needs outer >= 1 and inner >= 2 draws");
    if (outer * inner < kMinReplications) invalid("calibration needs B >= 100");

    CalibrationTable table;
    table.hypothesis = Hypothesis::AlternativeRandomized;
    table.variant = variant;
    table.sizes.assign(sizes.begin(), sizes.end());
    table.quantile_level = q;
    table.replications = outer * inner;
    table.seed = seed;

    const std::size_t batches = sizes.size() * outer;
    std::vector<double> batch_quantile(batches);
    parallel_for(batches, [&](std::size_t k) {
        const std::size_t si = k / outer;
        const std::size_t draw = k % outer;
        Rng nuisance_rng(derive_seed(cell_seed(seed, si, draw), 0xA17ULL));
        dgp::DgpSpec spec = design.sampler.draw(sizes[si], nuisance_rng);
        std::vector<double> stats(inner);
        for (std::size_t r = 0; r < inner; ++r) {
            spec.seed = derive_seed(cell_seed(seed, si, draw), r + 1);
            stats[r] = full_sample_statistic(spec, variant);
        }
        batch_quantile[k] = empirical_quantile(stats, q);
    });
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        double sum = 0.0;
        for (std::size_t d = 0; d < outer; ++d) sum += batch_quantile[si * outer + d];
        table.values.push_back(sum / static_cast<double>(outer));
    }
    return table;
}

double fit_log_divisor(const CalibrationTable& table) {
    // value ~ log(n) * w with w = 1/d: w = sum(v log n) / sum(log^2 n).
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < table.sizes.size(); ++i) {
        const double l = std::log(static_cast<double>(table.sizes[i]));
        num += table.values[i] * l;
        den += l * l;
    }
    if (!(num > 0.0)) throw Error(ErrorKind::Domain, "log-rule fit needs a positively sloped table");
    return den / num;
}

void write_csv(std::ostream& out, const CalibrationTable& table) {
    out << provenance_line(table.seed) << '\n';
    out << "hypothesis,variant,n,q,B,value,seed\n";
    for (std::size_t i = 0; i < table.sizes.size(); ++i) {
        out << to_string(table.hypothesis) << ',' << to_string(table.variant) << ',' << table.sizes[i] << ','
            << format_number(table.quantile_level) << ',' << table.replications << ','
            << format_number(table.values[i]) << ',' << table.seed << '\n';
    }
}

CalibrationTable read_csv(std::istream& in) {
    const CsvTable csv = parse_csv(in);
    for (const char* col : {"hypothesis", "variant", "n", "q", "B", "value", "seed"}) {
        if (!csv.has_column(col)) {
            throw Error(ErrorKind::Schema, std::string("calibration CSV lacks column '") + col + "'");
        }
    }
    CalibrationTable table;
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        const auto cell = [&](const char* col) { return row[csv.column(col)]; };
        const std::size_t line = csv.line_numbers[r];
        if (r == 0) {
            table.hypothesis = parse_hypothesis(cell("hypothesis"));
            table.variant = parse_variant(cell("variant"));
            table.quantile_level = parse_number(cell("q"), line);
            table.replications = static_cast<std::size_t>(parse_number(cell("B"), line));
            table.seed = static_cast<std::uint64_t>(std::stoull(cell("seed")));
        }
        table.sizes.push_back(static_cast<std::size_t>(parse_number(cell("n"), line)));
        table.values.push_back(parse_number(cell("value"), line));
    }
    table.validate();
    return table;
}

}  // namespace svadf::calibration
