#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svadf/rng.hpp"
#include "svadf/series.hpp"

namespace svadf::dgp {

enum class VolKind { Constant, LogAr1, Garch };

std::string_view to_string(VolKind kind) noexcept;
VolKind parse_vol_kind(std::string_view text);

/**
 * @brief Volatility regime for the innovation scale sigma_t.
 *
 *  - Constant: sigma_t = sigma0. sigma0 = 0 is accepted and yields noiseless paths.
 *  - LogAr1:   log sigma_t^2 = phi_n log sigma_{t-1}^2 + eta_t,  eta_t ~ N(0, eta^2),
 *              log sigma_0^2 = 2 log sigma0.
 *  - Garch:    sigma_t^2 = alpha_g u_{t-1}^2 + beta_g sigma_{t-1}^2 with zero intercept,
 *              u_t = sigma_t eps_t and sigma_0 = sigma0.
 */
struct VolSpec {
    VolKind kind = VolKind::Constant;
    double sigma0 = 1.0;
    double eta = 0.0;
    /// LogAr1 persistence. Empty selects the iterated-log rule phi_n = 1 - 1/log log max(n, 16).
    std::optional<double> phi;
    double alpha_g = 0.0;
    double beta_g = 0.0;

    static VolSpec constant(double sigma0 = 1.0);
    static VolSpec log_ar1(double eta, std::optional<double> phi = std::nullopt, double sigma0 = 1.0);
    static VolSpec garch(double alpha_g, double beta_g, double sigma0 = 1.0);

    void validate() const;
    /// Resolved LogAr1 persistence phi_n for sample size n.
    double persistence(std::size_t n) const;
};

double iterated_log_persistence(std::size_t n);

/// Single mildly explosive episode on [floor(n r_e), floor(n r_f)] with root 1 + c / n^alpha.
struct BubbleSpec {
    double r_e = 0.0;
    double r_f = 0.0;
    double c = 1.0;
    double alpha = 0.5;

    void validate() const;
    double root(std::size_t n) const;
    std::size_t origin_index(std::size_t n) const;
    std::size_t collapse_index(std::size_t n) const;
};

/// Minimum sample size accepted by the simulators.
inline constexpr std::size_t kMinSampleSize = 20;

struct DgpSpec {
    std::size_t n = 0;
    std::optional<BubbleSpec> bubble;  ///< empty: pure unit root
    VolSpec vol;
    double x0 = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// sigma_t and eps_t for t = 1..n, stored at index t - 1.
struct Shocks {
    std::vector<double> sigma;
    std::vector<double> eps;
};

/**
 * Draws volatility and innovations jointly. Per step the order is: the
 * log-volatility shock (LogAr1 only), then eps_t. GARCH additionally draws a
 * pre-sample eps_0 so that u_0 = sigma0 eps_0 feeds sigma_1.
 */
Shocks draw_shocks(const VolSpec& spec, std::size_t n, Rng& rng);

std::vector<double> gen_volatility(const VolSpec& spec, std::size_t n, Rng& rng);

/// X_0 = x0 and X_t = root_t X_{t-1} + sigma_t eps_t. The returned series has n + 1 values.
PriceSeries simulate(const DgpSpec& spec);

/**
 * Bubble with an explicit collapse-and-reset: identical to simulate() up to
 * the collapse index tau_f; afterwards X_t = X_{tau_e} + X^c + sum_{k>tau_f} sigma_k eps_k
 * with X^c ~ N(0, x_reset_sd^2) drawn once.
 */
PriceSeries simulate_pwy_reinit(const DgpSpec& spec, double x_reset_sd);

/// Flat key/value form. Keys mirror the CLI flags of the `simulate` command.
std::map<std::string, std::string> to_key_values(const DgpSpec& spec);
DgpSpec from_key_values(const std::map<std::string, std::string>& kv);
std::string to_config_section(const DgpSpec& spec, std::string_view section = "simulate");

}  // namespace svadf::dgp
