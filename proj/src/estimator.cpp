#include "svadf/estimator.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "svadf/distributions.hpp"
#include "svadf/error.hpp"

namespace svadf::estimator {

namespace {

// A lagged level whose demeaned sum of squares falls below this fraction of
// its raw sum of squares is treated as constant.
constexpr double kDegenerateRatio = 1e-20;

long double mean_of(std::span<const double> v) {
    long double s = 0.0L;
    for (double x : v) s += x;
    return s / static_cast<long double>(v.size());
}

}  // namespace

Window::Window(std::span<const double> levels, std::size_t tau, std::size_t start)
    : levels_(levels), tau_(tau), start_(start) {
    if (tau < kMinWindow) {
        throw Error(ErrorKind::WindowSize, "window of " + std::to_string(tau) +
                                               " transitions is below the minimum of " +
                                               std::to_string(kMinWindow));
    }
    if (start + tau + 1 > levels.size()) {
        throw Error(ErrorKind::WindowSize, "window end " + std::to_string(start + tau) +
                                               " exceeds the series (" + std::to_string(levels.size()) +
                                               " observations)");
    }
}

Window Window::full(const PriceSeries& series) {
    if (series.size() < 2) throw Error(ErrorKind::WindowSize, "series has no transitions");
    return Window(series.values(), series.sample_size());
}

std::vector<double> demean(std::span<const double> block) {
    if (block.empty()) return {};
    const long double m = mean_of(block);
    std::vector<double> out(block.size());
    for (std::size_t i = 0; i < block.size(); ++i) out[i] = static_cast<double>(block[i] - m);
    return out;
}

std::vector<double> demean(const Window& window) { return demean(window.regressors()); }

Ar1Fit fit_ar1(const Window& window) {
    const auto z = window.regressors();
    const auto y = window.responses();
    const std::size_t n = window.size();

    const long double zbar = mean_of(z);
    const long double ybar = mean_of(y);
    long double sxx = 0.0L, sxy = 0.0L, raw = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double dz = z[i] - zbar;
        sxx += dz * dz;
        sxy += dz * (y[i] - ybar);
        raw += static_cast<long double>(z[i]) * z[i];
    }
    if (!(sxx > kDegenerateRatio * raw)) {
        throw Error(ErrorKind::DegenerateRegressor, "lagged level is constant over the window");
    }

    Ar1Fit fit;
    fit.n_obs = n;
    const long double delta = sxy / sxx;
    fit.delta_hat = static_cast<double>(delta);
    fit.mu_hat = static_cast<double>(ybar - delta * zbar);
    fit.sum_sq_demeaned = static_cast<double>(sxx);
    long double ssr = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double u = (y[i] - ybar) - delta * (z[i] - zbar);
        ssr += u * u;
    }
    fit.sigma_hat_sq = static_cast<double>(ssr / static_cast<long double>(n));
    return fit;
}

AdfFit fit_adf(const Window& window, std::size_t lag_order) {
    return fit_adf(window, lag_order, lag_order + 1);
}

AdfFit fit_adf(const Window& window, std::size_t lag_order, std::size_t first_response) {
    const auto x = window.levels();
    const std::size_t tau = window.size();
    const std::size_t p = 2 + lag_order;
    if (first_response < lag_order + 1) {
        throw Error(ErrorKind::WindowSize, "first response index leaves lags undefined");
    }
    if (tau < kMinWindow + lag_order || first_response > tau || tau + 1 - first_response <= p) {
        throw Error(ErrorKind::WindowSize, "window of " + std::to_string(tau) +
                                               " transitions is too short for " +
                                               std::to_string(lag_order) + " lags");
    }
    const std::size_t m = tau + 1 - first_response;

    Eigen::MatrixXd design(m, p);
    Eigen::VectorXd response(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t t = first_response + i;
        design(i, 0) = 1.0;
        design(i, 1) = x[t - 1];
        for (std::size_t j = 1; j <= lag_order; ++j) design(i, 1 + j) = x[t - j] - x[t - j - 1];
        response(i) = x[t];
    }

    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(design);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
    for (std::size_t k = 0; k < p; ++k) {
        if (!(std::abs(r(k, k)) > 1e-10 * design.col(k).norm())) {
            if (k == 1) throw Error(ErrorKind::DegenerateRegressor, "lagged level is constant over the window");
            throw Error(ErrorKind::SingularDesign, "ADF design is collinear in column " + std::to_string(k));
        }
    }
    const Eigen::VectorXd beta = qr.solve(response);
    const Eigen::VectorXd resid = response - design * beta;
    const double ssr = resid.squaredNorm();
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
    const Eigen::VectorXd inv_gram_diag = r_inv.rowwise().squaredNorm();
    const double s2 = ssr / static_cast<double>(m - p);

    AdfFit fit;
    fit.lag_order = lag_order;
    fit.n_obs = m;
    fit.mu_hat = beta(0);
    fit.delta_hat = beta(1);
    fit.sigma_hat_sq = ssr / static_cast<double>(m);
    fit.delta_se = std::sqrt(fit.sigma_hat_sq * inv_gram_diag(1));
    for (std::size_t j = 0; j < lag_order; ++j) {
        fit.phi.push_back(beta(2 + j));
        fit.t_stats.push_back(beta(2 + j) / std::sqrt(s2 * inv_gram_diag(2 + j)));
    }
    const Eigen::VectorXd lagged = design.col(1);
    fit.sum_sq_demeaned = (lagged.array() - lagged.mean()).square().sum();
    fit.residuals.assign(resid.data(), resid.data() + m);
    return fit;
}

std::size_t select_lag(const Window& window, std::size_t l_max, double sig_level) {
    if (!(sig_level > 0.0 && sig_level < 1.0)) {
        throw Error(ErrorKind::Domain, "significance level must lie in (0, 1)");
    }
    const double crit = normal_quantile(1.0 - sig_level / 2.0);
    for (std::size_t lags = l_max; lags > 0; --lags) {
        const AdfFit fit = fit_adf(window, lags, l_max + 1);
        if (std::abs(fit.t_stats.back()) >= crit) return lags;
    }
    return 0;
}

}  // namespace svadf::estimator
