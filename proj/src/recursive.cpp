#include "svadf/recursive.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "svadf/error.hpp"

namespace svadf {

std::string_view to_string(Variant v) noexcept {
    return v == Variant::Coefficient ? "coefficient" : "ttype";
}

Variant parse_variant(std::string_view text) {
    if (text == "coefficient" || text == "coef" || text == "delta") return Variant::Coefficient;
    if (text == "ttype" || text == "t") return Variant::TType;
    throw Error(ErrorKind::InvalidSpec, "unknown statistic variant '" + std::string(text) + "'");
}

}  // namespace svadf

namespace svadf::recursive {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double combine(double delta_hat, double tau, double delta_var, Variant variant) {
    if (variant == Variant::Coefficient) return tau * (delta_hat - 1.0);
    return (delta_hat - 1.0) / std::sqrt(delta_var);
}

}  // namespace

std::size_t initial_window(std::size_t n, double r0) {
    if (!(r0 > 0.0 && r0 < 1.0)) throw Error(ErrorKind::InvalidSpec, "r0 must lie in (0, 1)");
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * r0));
}

double statistic(const estimator::Ar1Fit& fit, Variant variant) {
    const double tau = static_cast<double>(fit.n_obs);
    if (variant == Variant::Coefficient) return tau * (fit.delta_hat - 1.0);
    return std::sqrt(fit.sum_sq_demeaned / fit.sigma_hat_sq) * (fit.delta_hat - 1.0);
}

double stat_at(const PriceSeries& series, std::size_t tau, Variant variant, std::size_t lag_order) {
    const estimator::Window window(series.values(), tau);
    if (lag_order == 0) return statistic(estimator::fit_ar1(window), variant);
    const auto fit = estimator::fit_adf(window, lag_order);
    return combine(fit.delta_hat, static_cast<double>(tau), fit.delta_se * fit.delta_se, variant);
}

StatPath recursive_path(const PriceSeries& series, const RecursiveConfig& cfg) {
    const std::size_t n = series.sample_size();
    const std::size_t tau0 = initial_window(n, cfg.r0);

    std::size_t lags = cfg.lag_order;
    if (cfg.auto_lag) {
        lags = estimator::select_lag(estimator::Window::full(series), cfg.max_lag, cfg.lag_sig_level);
    }
    if (tau0 < estimator::kMinWindow + lags) {
        throw Error(ErrorKind::WindowSize, "initial window floor(n r0) = " + std::to_string(tau0) +
                                               " is below the minimum of " +
                                               std::to_string(estimator::kMinWindow + lags));
    }

    StatPath path;
    path.variant = cfg.variant;
    path.n = n;
    path.lag_order = lags;
    const std::size_t count = n - tau0 + 1;
    path.fractions.reserve(count);
    path.values.reserve(count);
    path.taus.reserve(count);

    const auto x = series.values();
    const std::size_t p = 2 + lags;
    estimator::RecursiveLeastSquares rls(p);
    std::vector<double> row(p);
    for (std::size_t t = lags + 1; t <= n; ++t) {
        row[0] = 1.0;
        row[1] = x[t - 1];
        for (std::size_t j = 1; j <= lags; ++j) row[1 + j] = x[t - j] - x[t - j - 1];
        rls.add(row, x[t]);
        if (t < tau0) continue;

        double value = kNaN;
        const double tau = static_cast<double>(t);
        if (rls.count() > p && rls.well_conditioned()) {
            const double delta = rls.coefficients()[1];
            double var = 0.0;
            if (cfg.variant == Variant::TType) {
                var = rls.ssr() / static_cast<double>(rls.count()) * rls.inverse_gram_diag(1);
            }
            value = combine(delta, tau, var, cfg.variant);
            if (!std::isfinite(value)) value = kNaN;
        }
        path.taus.push_back(t);
        path.fractions.push_back(tau / static_cast<double>(n));
        path.values.push_back(value);
    }
    return path;
}

}  // namespace svadf::recursive
