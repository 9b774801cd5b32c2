#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svadf/dgp.hpp"
#include "svadf/recursive.hpp"

namespace svadf::calibration {

enum class Hypothesis { NullUnitRoot, AlternativeRandomized };

std::string_view to_string(Hypothesis h) noexcept;
Hypothesis parse_hypothesis(std::string_view text);

/// Monte Carlo quantiles of the full-sample statistic, one per sample size.
struct CalibrationTable {
    Hypothesis hypothesis = Hypothesis::NullUnitRoot;
    Variant variant = Variant::Coefficient;
    std::vector<std::size_t> sizes;
    double quantile_level = 0.9;
    std::vector<double> values;
    std::size_t replications = 0;
    std::uint64_t seed = 0;

    void validate() const;
    /// Linear interpolation in n between tabulated sizes, clamped to the end rows.
    double value_at(double n) const;
};

inline constexpr std::size_t kMinReplications = 100;

/// Unit-root series under `vol`; empirical q-quantile of the statistic at r = 1.
CalibrationTable calibrate_null(std::span<const std::size_t> sizes, std::size_t replications, double q,
                                const dgp::VolSpec& vol, Variant variant, std::uint64_t seed);

/**
 * @brief Ranges for the randomized bubble designs.
 *
 * r_f is drawn from U(r_e + min_gap, r_f_max). The volatility is log-AR(1)
 * with the iterated-log persistence, innovation s.d. eta and initial scale d.
 */
struct NuisanceSampler {
    double r_e_lo = 0.2, r_e_hi = 0.5;
    double min_gap = 0.15;
    double r_f_hi = 0.8;
    double c_lo = 0.3, c_hi = 1.5;
    double alpha_lo = 0.3, alpha_hi = 0.7;
    double eta_lo = 0.0, eta_hi = 1.0;
    double scale_lo = 0.5, scale_hi = 2.0;

    void validate() const;
    dgp::DgpSpec draw(std::size_t n, Rng& rng) const;
};

struct AlternativeDesign {
    NuisanceSampler sampler;
    std::size_t outer_draws = 20;  ///< nuisance draws per size
    std::size_t inner_reps = 50;   ///< series per nuisance draw
};

/**
 * For each n: per nuisance draw, simulate inner_reps bubble series, take the
 * q-quantile of the full-sample statistic, and average across draws.
 * The table records outer_draws * inner_reps as its replication count.
 */
CalibrationTable calibrate_alternative(std::span<const std::size_t> sizes, double q,
                                       const AlternativeDesign& design, Variant variant,
                                       std::uint64_t seed);

/// Least-squares d minimizing sum (value_n - log(n)/d)^2.
double fit_log_divisor(const CalibrationTable& table);

/// Columns: hypothesis,variant,n,q,B,value,seed. Preceded by a '#' provenance line.
void write_csv(std::ostream& out, const CalibrationTable& table);
CalibrationTable read_csv(std::istream& in);

}  // namespace svadf::calibration
