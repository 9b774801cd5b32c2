#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace svadf {

/// Calendar date, stored as days since 1970-01-01.
class Date {
public:
    constexpr Date() = default;
    static Date from_days(int days_since_epoch) { return Date(days_since_epoch); }
    static Date from_ymd(int year, unsigned month, unsigned day);

    /// Parses YYYY-MM-DD. A trailing time part ("T..." or " ...") is ignored.
    static Date parse(std::string_view iso);

    std::string to_string() const;
    int days() const noexcept { return days_; }
    bool is_weekend() const;
    Date plus_days(int n) const { return Date(days_ + n); }

    auto operator<=>(const Date&) const = default;

private:
    explicit constexpr Date(int days) : days_(days) {}
    int days_ = 0;
};

/**
 * @brief An observed price path X_0, X_1, ..., X_n.
 *
 * The first value plays the role of the initial condition, so a series with
 * N values carries n = N - 1 autoregressive transitions. Simulated series
 * follow the same layout (values[t] is X_t), which keeps observation indices
 * and model time aligned.
 */
class PriceSeries {
public:
    PriceSeries() = default;
    explicit PriceSeries(std::vector<double> values, std::vector<Date> dates = {},
                         std::string label = {});

    std::span<const double> values() const noexcept { return values_; }
    const std::vector<Date>& dates() const noexcept { return dates_; }
    const std::string& label() const noexcept { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    std::size_t size() const noexcept { return values_.size(); }
    /// Number of transitions available to the autoregression.
    std::size_t sample_size() const noexcept { return values_.empty() ? 0 : values_.size() - 1; }
    bool dated() const noexcept { return !dates_.empty(); }

    /// Copy of observations [first, last] inclusive, dates sliced alongside.
    PriceSeries slice(std::size_t first, std::size_t last) const;
    /// Natural log of every value; throws ErrorKind::Domain on a nonpositive value.
    PriceSeries log() const;

private:
    std::vector<double> values_;
    std::vector<Date> dates_;
    std::string label_;
};

}  // namespace svadf
