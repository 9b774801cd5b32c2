#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "svadf/calibration.hpp"
#include "svadf/recursive.hpp"
#include "svadf/series.hpp"

namespace svadf::dating {

enum class Side { RightTail, LeftTail };

struct LogRule {
    double divisor = 10.0;  ///< threshold log(n s) / divisor
};
struct FixedValue {
    double value = 0.0;
};
struct CalibratedQuantile {
    std::shared_ptr<const calibration::CalibrationTable> table;
};

struct ThresholdRule {
    std::variant<LogRule, CalibratedQuantile, FixedValue> kind;
    Side side = Side::RightTail;

    static ThresholdRule log_rule(double divisor, Side side = Side::RightTail);
    static ThresholdRule fixed(double value, Side side = Side::RightTail);
    static ThresholdRule calibrated(calibration::CalibrationTable table, Side side = Side::RightTail);

    void validate() const;
    std::string describe() const;
};

/// Boundary at window size n s. Throws ErrorKind::Domain when n s < 2.
double threshold_value(const ThresholdRule& rule, std::size_t n, double s);

/**
 * @brief Minimum durations, in observations, attached to the two crossings.
 *
 * Origination at index i requires the statistic to stay above the boundary
 * for min_above observations starting at i, tolerating runs of at most
 * consolidation_gap observations below it. Collapse at j requires min_below
 * observations below. Durations 0 and 1 both mean "the crossing itself".
 */
struct PersistenceFilter {
    std::size_t min_above = 0;
    std::size_t min_below = 0;
    std::size_t consolidation_gap = 0;
    /**
     * Collapse is a downward crossing: the search only starts once the
     * statistic has reached the collapse boundary after origination. Turning
     * this off dates collapse at the first point below the boundary.
     */
    bool require_arming = true;

    /// Daily-data convention: two months (42 days) above with 5-day dips, one month (21) below.
    static PersistenceFilter daily_default();
    static PersistenceFilter from_calendar_days(std::size_t above_days, std::size_t below_days,
                                                std::size_t gap_days);
};

struct Episode {
    std::optional<double> r_e_hat;
    std::optional<double> r_f_hat;  ///< empty while the bubble is ongoing at sample end
    std::size_t origin_index = 0;
    std::optional<std::size_t> collapse_index;
    std::optional<Date> origin_date;
    std::optional<Date> collapse_date;
    double max_stat = 0.0;
    bool ongoing = false;
    std::string label;
};

/// Separation between origination and collapse, ceil(log n) observations.
std::size_t collapse_buffer(std::size_t n);

std::optional<Episode> datestamp(const recursive::StatPath& path, const ThresholdRule& orig_rule,
                                 const ThresholdRule& coll_rule, const PersistenceFilter& filter = {});

/// Single-threshold baseline: one boundary for both crossings, no buffer, no filter.
std::optional<Episode> datestamp_pwy(const recursive::StatPath& path, const ThresholdRule& single_rule);

/// Attaches calendar dates and label from the series the path was computed on.
void attach_dates(Episode& episode, const PriceSeries& series);

}  // namespace svadf::dating
