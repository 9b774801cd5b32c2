#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "svadf/dating.hpp"
#include "svadf/dgp.hpp"
#include "svadf/recursive.hpp"

namespace svadf::bench {

struct Design {
    std::string name;
    std::size_t n = 1000;
    std::optional<dgp::BubbleSpec> bubble;  ///< empty: no-bubble null design
    dgp::VolSpec vol;
};

/// Success bands for "identified": |r_e_hat - r_e| <= origin, and additionally |r_f_hat - r_f| <= collapse.
struct Tolerance {
    double origin = 0.10;
    double collapse = 0.15;
};

struct Rules {
    dating::ThresholdRule svadf_orig = dating::ThresholdRule::log_rule(10.0);
    dating::ThresholdRule svadf_coll = dating::ThresholdRule::log_rule(2.0);
    dating::PersistenceFilter filter = default_filter();
    /// Single boundary for the baseline. Empty: calibrate from the homoskedastic null per sample size.
    std::optional<dating::ThresholdRule> pwy;

    /// Collapse must hold for 21 observations (the one-month rule); origination is a plain crossing.
    static dating::PersistenceFilter default_filter();
};

inline constexpr std::size_t kMinGridReplications = 50;

struct ExperimentGrid {
    std::vector<Design> designs;
    std::size_t replications = 500;
    Rules rules;
    Tolerance tolerance;
    recursive::RecursiveConfig path;
    std::uint64_t seed = 0;

    void validate() const;
};

enum class Method { SvAdf, Pwy };
std::string_view to_string(Method m) noexcept;

/**
 * Rates are over all successful replications. Means and MSEs are over
 * replications with a detected episode; an ongoing episode enters with
 * r_f_hat = 1. For no-bubble designs orig_rate is the detection frequency
 * and the remaining fields are NaN.
 */
struct MethodStats {
    double orig_rate = 0.0;
    double coll_rate = 0.0;
    double mean_re = 0.0;
    double mean_rf = 0.0;
    double mse_re = 0.0;
    double mse_rf = 0.0;
    std::size_t detections = 0;
    std::size_t failures = 0;  ///< replications that raised an error
};

struct CellResult {
    Design design;
    std::size_t replications = 0;
    std::uint64_t seed = 0;
    MethodStats svadf;
    MethodStats pwy;

    const MethodStats& stats(Method m) const { return m == Method::SvAdf ? svadf : pwy; }
};

/// Replication r of cell k uses derive_seed(derive_seed(seed, k), r); results do not depend on the worker count.
std::vector<CellResult> run_power(const ExperimentGrid& grid);
/// Same replications as run_power; callers read the mean and MSE fields.
std::vector<CellResult> run_accuracy(const ExperimentGrid& grid);

/// Homoskedastic null 90% table at sizes spanning the recursion windows of an n-sample.
dating::ThresholdRule pwy_default_rule(std::size_t n, double r0, std::uint64_t seed,
                                       std::size_t replications = 1000);

struct GapPoint {
    std::string regime;
    std::size_t n = 0;
    double mean_gap = 0.0;      ///< mean |X_{tau_f} - X_{tau_e}| without reset
    double mean_pwy_gap = 0.0;  ///< mean |X_{tau_f + 1} - X_{tau_e}| under the reset model
};

struct GapDesign {
    dgp::BubbleSpec bubble{0.4, 0.6, 1.0, 0.5};
    std::vector<std::pair<std::string, dgp::VolSpec>> regimes = {
        {"homoskedastic", dgp::VolSpec::constant(1.0)},
        {"sv", dgp::VolSpec::log_ar1(0.5)},
    };
    double x_reset_sd = 1.0;
};

std::vector<GapPoint> run_reinit_gap(const std::vector<std::size_t>& ns, std::size_t replications,
                                     const GapDesign& design, std::uint64_t seed);

/// OLS slope of log(mean_gap) on sqrt(n) for one regime.
double gap_growth_slope(const std::vector<GapPoint>& points, const std::string& regime);

/// The ten (r_e, r_f) cells of the identification-rate table; c = 1, alpha = 0.5, log-AR(1) eta = 0.5.
std::vector<Design> table2_designs(std::size_t n = 1000);
/// Nine volatility designs with r_e = 0.3, r_f = 0.6, alpha = 0.5.
std::vector<Design> table3_designs(std::size_t n = 1000);
/// Eight (r_e, r_f, alpha) accuracy rows; c = 1, log-AR(1) eta = 0.5.
std::vector<Design> table4_designs(std::size_t n = 1000);
/// No-bubble designs under constant, log-AR(1) and GARCH volatility.
std::vector<Design> null_designs(std::size_t n);

/// Columns: name,n,r_e,r_f,c,alpha,vol,eta,alpha_g,beta_g,method,orig_rate,coll_rate,mean_re,mean_rf,mse_re,mse_rf,detections,failures,B,seed.
void write_results_csv(std::ostream& out, const std::vector<CellResult>& cells, std::uint64_t seed);
void write_gap_csv(std::ostream& out, const std::vector<GapPoint>& points, std::uint64_t seed);

/// Side-by-side rates and accuracy for both methods, one row per design.
std::string format_table(const std::vector<CellResult>& cells);

}  // namespace svadf::bench
