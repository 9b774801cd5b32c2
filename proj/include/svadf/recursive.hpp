#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "svadf/estimator.hpp"
#include "svadf/series.hpp"

namespace svadf {

/// Coefficient form tau (delta_hat - 1) or self-normalized t form.
enum class Variant { Coefficient, TType };

std::string_view to_string(Variant v) noexcept;
Variant parse_variant(std::string_view text);

}  // namespace svadf

namespace svadf::recursive {

struct RecursiveConfig {
    double r0 = 0.1;  ///< initial window fraction
    Variant variant = Variant::Coefficient;
    std::size_t lag_order = 0;
    /// Choose the lag order once on the full sample by sequential t-tests, then hold it fixed.
    bool auto_lag = false;
    std::size_t max_lag = 6;
    double lag_sig_level = 0.05;
};

/**
 * @brief Forward-recursive statistic, one value per window end tau = floor(n r0) .. n.
 *
 * values[i] is NaN where the window is degenerate (flat prices); dating
 * treats such points as no crossing.
 */
struct StatPath {
    std::vector<double> fractions;  ///< tau / n
    std::vector<double> values;
    std::vector<std::size_t> taus;  ///< window end, also the observation index in the series
    Variant variant = Variant::Coefficient;
    std::size_t n = 0;  ///< transitions in the full sample
    std::size_t lag_order = 0;

    std::size_t size() const noexcept { return values.size(); }
};

std::size_t initial_window(std::size_t n, double r0);

/// Statistic from an AR(1) fit on tau transitions.
double statistic(const estimator::Ar1Fit& fit, Variant variant);

/**
 * Statistic on the first tau transitions, refit from scratch. With lags the
 * t form is (delta_hat - 1) / se(delta_hat) with se built from SSR / tau,
 * which reduces to the AR(1) expression when lag_order = 0.
 */
double stat_at(const PriceSeries& series, std::size_t tau, Variant variant, std::size_t lag_order = 0);

/// Expanding-window path in O(n) for fixed lag order (Givens-updated least squares).
StatPath recursive_path(const PriceSeries& series, const RecursiveConfig& cfg);

}  // namespace svadf::recursive
