#pragma once

#include <cstddef>
#include <string_view>
#include <utility>

#include "svadf/distributions.hpp"
#include "svadf/series.hpp"

namespace svadf::inference {

enum class Regime { SubUnity, Explosive };
enum class Classification { Explosive, NonExplosive, Inconclusive };

std::string_view to_string(Regime r) noexcept;
std::string_view to_string(Classification c) noexcept;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
    double half_width() const noexcept { return 0.5 * (hi - lo); }
};

struct RootInference {
    double delta_hat = 1.0;
    double gamma_hat = 0.0;
    Interval ci_delta;
    Interval ci_gamma;
    Regime regime = Regime::SubUnity;
    double level = 0.95;
    std::size_t n = 0;

    /// Position of ci_delta relative to 1.
    Classification classification() const noexcept;
};

/// Distance from 1 below which delta_hat is treated as an exact unit root.
inline constexpr double kUnitRootGuard = 1e-8;

/// -log|delta_hat - 1| / log n. Throws ExactUnitRoot near 1, Domain for n < 2.
double gamma_hat(double delta_hat, std::size_t n);

/// Intervals from a given estimate; the regime follows the side of 1 that delta_hat lies on.
RootInference root_intervals(double delta_hat, std::size_t n, double level);

/// Full-sample AR(1) with intercept, then root_intervals.
RootInference infer_root(const PriceSeries& series, double level = 0.95);

}  // namespace svadf::inference
