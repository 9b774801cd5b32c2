#include "svadf/inference.hpp"

#include <cmath>

#include "svadf/error.hpp"
#include "svadf/estimator.hpp"

namespace svadf::inference {

std::string_view to_string(Regime r) noexcept {
    return r == Regime::SubUnity ? "sub-unity" : "explosive";
}

std::string_view to_string(Classification c) noexcept {
    switch (c) {
        case Classification::Explosive: return "explosive";
        case Classification::NonExplosive: return "non-explosive";
        case Classification::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Classification RootInference::classification() const noexcept {
    if (ci_delta.lo > 1.0) return Classification::Explosive;
    if (ci_delta.hi < 1.0) return Classification::NonExplosive;
    return Classification::Inconclusive;
}

double gamma_hat(double delta_hat, std::size_t n) {
    if (n < 2) throw Error(ErrorKind::Domain, "gamma_hat needs n >= 2");
    if (!std::isfinite(delta_hat)) throw Error(ErrorKind::Domain, "delta_hat is not finite");
    const double dev = std::fabs(delta_hat - 1.0);
    if (dev < kUnitRootGuard) {
        throw Error(ErrorKind::ExactUnitRoot, "delta_hat is within 1e-8 of one; only the point estimate is defined");
    }
    return -std::log(dev) / std::log(static_cast<double>(n));
}

RootInference root_intervals(double delta_hat, std::size_t n, double level) {
    if (!(level > 0.0 && level < 1.0)) throw Error(ErrorKind::Domain, "confidence level must lie in (0, 1)");
    RootInference out;
    out.delta_hat = delta_hat;
    out.level = level;
    out.n = n;
    out.gamma_hat = gamma_hat(delta_hat, n);

    const double nd = static_cast<double>(n);
    const double log_n = std::log(nd);
    const double g = out.gamma_hat;
    double hw_delta = 0.0;
    double hw_gamma = 0.0;
    if (delta_hat < 1.0) {
        out.regime = Regime::SubUnity;
        const double c = normal_quantile(0.5 * (1.0 + level));
        hw_delta = c * 2.0 * std::exp(-0.5 * (1.0 + g) * log_n);
        hw_gamma = c * std::sqrt(2.0) * std::exp(-0.5 * (1.0 - g) * log_n) / log_n;
    } else {
        out.regime = Regime::Explosive;
        const double c = cauchy_quantile(0.5 * (1.0 + level));
        // n^g * delta^n and (1 + n^-g)^n in log space.
        hw_delta = c * 2.0 * std::exp(-(g * log_n + nd * std::log(delta_hat)));
        hw_gamma = c * 2.0 * std::exp(-nd * std::log1p(std::exp(-g * log_n))) / log_n;
    }
    out.ci_delta = {delta_hat - hw_delta, delta_hat + hw_delta};
    out.ci_gamma = {g - hw_gamma, g + hw_gamma};
    return out;
}

RootInference infer_root(const PriceSeries& series, double level) {
    const std::size_t n = series.sample_size();
    const estimator::Window window(series.values(), n);
    const estimator::Ar1Fit fit = estimator::fit_ar1(window);
    return root_intervals(fit.delta_hat, n, level);
}

}  // namespace svadf::inference
