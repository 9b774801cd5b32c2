#include "svadf/dating.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "svadf/error.hpp"

namespace svadf::dating {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Path = recursive::StatPath;

std::vector<double> boundary(const Path& path, const ThresholdRule& rule) {
    std::vector<double> cv(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) cv[i] = threshold_value(rule, path.n, path.fractions[i]);
    return cv;
}

// NaN compares false, so degenerate windows never count as a crossing.
bool above(const Path& p, const std::vector<double>& cv, std::size_t i) { return p.values[i] > cv[i]; }
bool below(const Path& p, const std::vector<double>& cv, std::size_t i) { return p.values[i] < cv[i]; }

template <class Pred>
bool persists(std::size_t i, std::size_t len, std::size_t duration, std::size_t gap, Pred holds) {
    if (duration <= 1) return true;
    if (i + duration > len) return false;
    std::size_t run = 0;
    for (std::size_t j = i; j < i + duration; ++j) {
        if (holds(j)) {
            run = 0;
        } else if (++run > gap) {
            return false;
        }
    }
    return true;
}

Episode make_episode(const Path& path, std::size_t i, std::optional<std::size_t> j) {
    Episode e;
    e.r_e_hat = path.fractions[i];
    e.origin_index = path.taus[i];
    const std::size_t end = j ? *j : path.size() - 1;
    double mx = -INFINITY;
    for (std::size_t k = i; k <= end; ++k) {
        if (std::isfinite(path.values[k])) mx = std::max(mx, path.values[k]);
    }
    e.max_stat = mx;
    if (j) {
        e.r_f_hat = path.fractions[*j];
        e.collapse_index = path.taus[*j];
    } else {
        e.ongoing = true;
    }
    return e;
}

}  // namespace

ThresholdRule ThresholdRule::log_rule(double divisor, Side side) { return {LogRule{divisor}, side}; }

ThresholdRule ThresholdRule::fixed(double value, Side side) { return {FixedValue{value}, side}; }

ThresholdRule ThresholdRule::calibrated(calibration::CalibrationTable table, Side side) {
    table.validate();
    return {CalibratedQuantile{std::make_shared<const calibration::CalibrationTable>(std::move(table))},
            side};
}

void ThresholdRule::validate() const {
    std::visit(overloaded{
                   [](const LogRule& r) {
                       if (!(r.divisor > 0.0)) throw Error(ErrorKind::InvalidSpec, "log-rule divisor must be positive");
                   },
                   [](const CalibratedQuantile& r) {
                       if (!r.table) throw Error(ErrorKind::InvalidSpec, "calibrated rule without a table");
                       r.table->validate();
                   },
                   [](const FixedValue& r) {
                       if (!std::isfinite(r.value)) throw Error(ErrorKind::InvalidSpec, "fixed threshold must be finite");
                   },
               },
               kind);
}

std::string ThresholdRule::describe() const {
    std::ostringstream out;
    std::visit(overloaded{
                   [&](const LogRule& r) { out << "log(ns)/" << r.divisor; },
                   [&](const CalibratedQuantile& r) {
                       out << "calibrated q=" << (r.table ? r.table->quantile_level : 0.0);
                   },
                   [&](const FixedValue& r) { out << "fixed " << r.value; },
               },
               kind);
    return out.str();
}

double threshold_value(const ThresholdRule& rule, std::size_t n, double s) {
    const double size = static_cast<double>(n) * s;
    if (!(size >= 2.0)) throw Error(ErrorKind::Domain, "threshold needs n s >= 2");
    return std::visit(overloaded{
                          [&](const LogRule& r) {
                              if (!(r.divisor > 0.0)) throw Error(ErrorKind::InvalidSpec, "log-rule divisor must be positive");
                              return std::log(size) / r.divisor;
                          },
                          [&](const CalibratedQuantile& r) {
                              if (!r.table) throw Error(ErrorKind::InvalidSpec, "calibrated rule without a table");
                              return r.table->value_at(size);
                          },
                          [](const FixedValue& r) { return r.value; },
                      },
                      rule.kind);
}

PersistenceFilter PersistenceFilter::daily_default() { return from_calendar_days(42, 21, 5); }

PersistenceFilter PersistenceFilter::from_calendar_days(std::size_t above_days, std::size_t below_days,
                                                        std::size_t gap_days) {
    PersistenceFilter f;
    f.min_above = above_days;
    f.min_below = below_days;
    f.consolidation_gap = gap_days;
    return f;
}

std::size_t collapse_buffer(std::size_t n) {
    return static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(std::max<std::size_t>(n, 1)))));
}

std::optional<Episode> datestamp(const Path& path, const ThresholdRule& orig_rule,
                                 const ThresholdRule& coll_rule, const PersistenceFilter& filter) {
    const std::size_t len = path.size();
    if (len == 0) return std::nullopt;
    const auto cv_o = boundary(path, orig_rule);
    const auto cv_c = boundary(path, coll_rule);

    std::optional<std::size_t> origin;
    for (std::size_t i = 0; i < len && !origin; ++i) {
        if (!above(path, cv_o, i)) continue;
        if (persists(i, len, filter.min_above, filter.consolidation_gap,
                     [&](std::size_t k) { return above(path, cv_o, k); })) {
            origin = i;
        }
    }
    if (!origin) return std::nullopt;
    const std::size_t i = *origin;

    std::size_t start = i + collapse_buffer(path.n);
    if (filter.require_arming) {
        std::size_t armed = i;
        while (armed < len && !(path.values[armed] >= cv_c[armed])) ++armed;
        start = std::max(start, armed);
    }
    std::optional<std::size_t> collapse;
    for (std::size_t j = start; j < len && !collapse; ++j) {
        if (!below(path, cv_c, j)) continue;
        if (persists(j, len, filter.min_below, 0, [&](std::size_t k) { return below(path, cv_c, k); })) {
            collapse = j;
        }
    }
    return make_episode(path, i, collapse);
}

std::optional<Episode> datestamp_pwy(const Path& path, const ThresholdRule& single_rule) {
    const std::size_t len = path.size();
    const auto cv = boundary(path, single_rule);
    std::size_t i = 0;
    while (i < len && !above(path, cv, i)) ++i;
    if (i == len) return std::nullopt;
    std::size_t j = i + 1;
    while (j < len && !below(path, cv, j)) ++j;
    return make_episode(path, i, j < len ? std::optional<std::size_t>(j) : std::nullopt);
}

void attach_dates(Episode& episode, const PriceSeries& series) {
    episode.label = series.label();
    if (!series.dated()) return;
    const auto& d = series.dates();
    if (episode.origin_index < d.size()) episode.origin_date = d[episode.origin_index];
    if (episode.collapse_index && *episode.collapse_index < d.size()) {
        episode.collapse_date = d[*episode.collapse_index];
    }
}

}  // namespace svadf::dating
