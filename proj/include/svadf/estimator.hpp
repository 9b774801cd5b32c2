#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "svadf/series.hpp"

namespace svadf::estimator {

/// Smallest window that leaves residual degrees of freedom after intercept and lag.
inline constexpr std::size_t kMinWindow = 8;

/**
 * @brief The first tau transitions of a level series, starting at `start`.
 *
 * Regressors are X_{start} .. X_{start+tau-1}; responses are one step ahead.
 */
class Window {
public:
    Window(std::span<const double> levels, std::size_t tau, std::size_t start = 0);
    static Window full(const PriceSeries& series);

    std::span<const double> levels() const noexcept { return levels_.subspan(start_, tau_ + 1); }
    std::span<const double> regressors() const noexcept { return levels_.subspan(start_, tau_); }
    std::span<const double> responses() const noexcept { return levels_.subspan(start_ + 1, tau_); }
    std::size_t size() const noexcept { return tau_; }
    std::size_t start() const noexcept { return start_; }

private:
    std::span<const double> levels_;
    std::size_t tau_;
    std::size_t start_;
};

/// Subtracts the block mean. No minimum length.
std::vector<double> demean(std::span<const double> block);
/// Demeaned lagged regressor of a window. Throws ErrorKind::WindowSize on short windows.
std::vector<double> demean(const Window& window);

struct Ar1Fit {
    double delta_hat = 0.0;
    double mu_hat = 0.0;
    double sum_sq_demeaned = 0.0;  ///< sum of squared demeaned lagged levels
    double sigma_hat_sq = 0.0;     ///< residual sum of squares / n_obs
    std::size_t n_obs = 0;
};

/// OLS of X_j on (1, X_{j-1}). Throws DegenerateRegressor when the lagged level is flat.
Ar1Fit fit_ar1(const Window& window);

struct AdfFit {
    double delta_hat = 0.0;
    double mu_hat = 0.0;
    std::vector<double> phi;      ///< lagged-difference coefficients
    std::vector<double> t_stats;  ///< t-statistics of phi
    std::size_t lag_order = 0;
    double sigma_hat_sq = 0.0;     ///< SSR / n_obs
    double sum_sq_demeaned = 0.0;  ///< over the usable range
    double delta_se = 0.0;         ///< sqrt(sigma_hat_sq [(X'X)^-1]_delta)
    std::size_t n_obs = 0;
    std::vector<double> residuals;
};

/**
 * OLS of x_t on [1, x_{t-1}, dx_{t-1}, ..., dx_{t-L}] over t = L+1..tau.
 * Solved by Householder QR. t-statistics use SSR / (n_obs - p).
 */
AdfFit fit_adf(const Window& window, std::size_t lag_order);

/// Same regression but on a caller-fixed first response index (>= lag_order + 1).
AdfFit fit_adf(const Window& window, std::size_t lag_order, std::size_t first_response);

/**
 * General-to-specific lag selection: start from l_max and drop the last lag
 * while its |t| is below the two-sided normal critical value at sig_level.
 * All candidate models share the sample implied by l_max.
 */
std::size_t select_lag(const Window& window, std::size_t l_max, double sig_level);

/**
 * @brief Least squares updated one row at a time by Givens rotations.
 *
 * Keeps the triangular factor R and Q'y of the design seen so far; the
 * residual sum of squares accumulates the part of each new response that
 * the rotations leave outside the column space. Each update costs O(p^2).
 */
class RecursiveLeastSquares {
public:
    explicit RecursiveLeastSquares(std::size_t num_params);

    void add(std::span<const double> row, double y);

    std::size_t num_params() const noexcept { return p_; }
    std::size_t count() const noexcept { return count_; }
    double ssr() const noexcept { return static_cast<double>(ssr_); }
    double r(std::size_t i, std::size_t j) const { return r_[i * p_ + j]; }

    /// Squared norm of design column j.
    double column_norm_sq(std::size_t j) const;
    /// True when every diagonal of R is nonnegligible relative to its column norm.
    bool well_conditioned(double rel_tol = 1e-10) const;

    std::vector<double> coefficients() const;
    /// Diagonal element j of (X'X)^{-1}.
    double inverse_gram_diag(std::size_t j) const;

private:
    std::size_t p_;
    std::size_t count_ = 0;
    std::vector<double> r_;
    std::vector<double> qty_;
    std::vector<double> scratch_;
    long double ssr_ = 0.0L;
};

}  // namespace svadf::estimator
