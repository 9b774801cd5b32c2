#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <vector>

#include "svadf/dgp.hpp"
#include "svadf/error.hpp"
#include "svadf/estimator.hpp"

using namespace svadf;
using namespace svadf::estimator;

namespace {

std::vector<double> random_walk(std::size_t n, std::uint64_t seed, double sd = 1.0) {
    dgp::DgpSpec s;
    s.n = n;
    s.seed = seed;
    s.vol = dgp::VolSpec::constant(sd);
    const PriceSeries x_series = dgp::simulate(s);
    const auto x = x_series.values();
    return {x.begin(), x.end()};
}

// Brute-force normal equations in plain double sums.
struct NaiveOls {
    double slope, intercept, ssr;
};

NaiveOls naive_ar1(const std::vector<double>& x, std::size_t tau) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t j = 1; j <= tau; ++j) {
        sx += x[j - 1];
        sy += x[j];
        sxx += x[j - 1] * x[j - 1];
        sxy += x[j - 1] * x[j];
    }
    const double n = static_cast<double>(tau);
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double ssr = 0;
    for (std::size_t j = 1; j <= tau; ++j) {
        const double u = x[j] - intercept - slope * x[j - 1];
        ssr += u * u;
    }
    return {slope, intercept, ssr};
}

}  // namespace

TEST(Window, Bounds) {
    const std::vector<double> x(20, 1.0);
    EXPECT_THROW(Window(x, 7), Error);
    EXPECT_THROW(Window(x, 20), Error);
    EXPECT_NO_THROW(Window(x, 19));
    const Window w(x, 10, 3);
    EXPECT_EQ(w.regressors().size(), 10u);
    EXPECT_EQ(w.responses().data(), x.data() + 4);
}

TEST(Demean, ArithmeticProgression) {
    const std::vector<double> v = {1, 2, 3, 4};
    EXPECT_EQ(demean(v), (std::vector<double>{-1.5, -0.5, 0.5, 1.5}));
}

TEST(Demean, ConstantBlock) {
    const std::vector<double> v(9, 3.25);
    for (double d : demean(v)) EXPECT_EQ(d, 0.0);
}

TEST(Demean, RandomBlockSumsToZero) {
    const auto x = random_walk(50, 3);
    const std::vector<double> block(x.begin(), x.begin() + 50);
    const auto d = demean(block);
    double mx = 0;
    for (double v : block) mx = std::max(mx, std::fabs(v));
    EXPECT_NEAR(std::accumulate(d.begin(), d.end(), 0.0), 0.0, 1e-10 * mx * 50);
}

TEST(Demean, WindowVersionRejectsShortWindow) {
    const std::vector<double> x(5, 1.0);
    EXPECT_THROW(Window(x, 4), Error);
}

TEST(FitAr1, NoiselessExplosiveRecovery) {
    std::vector<double> x = {5.0};
    for (int t = 0; t < 30; ++t) x.push_back(1.1 * x.back());
    const auto fit = fit_ar1(Window(x, 30));
    EXPECT_NEAR(fit.delta_hat, 1.1, 1e-12);
    EXPECT_NEAR(fit.sigma_hat_sq, 0.0, 1e-18 * fit.sum_sq_demeaned);
    EXPECT_EQ(fit.n_obs, 30u);
}

TEST(FitAr1, AlternatingSeries) {
    std::vector<double> x;
    for (int t = 0; t <= 20; ++t) x.push_back(t % 2);
    const auto fit = fit_ar1(Window(x, 20));
    EXPECT_NEAR(fit.delta_hat, -1.0, 1e-12);
    EXPECT_NEAR(fit.mu_hat, 1.0, 1e-12);
}

TEST(FitAr1, MatchesBruteForceNormalEquations) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto x = random_walk(300, seed);
        const auto fit = fit_ar1(Window(x, 300));
        const auto ref = naive_ar1(x, 300);
        EXPECT_NEAR(fit.delta_hat, ref.slope, 1e-10);
        EXPECT_NEAR(fit.mu_hat, ref.intercept, 1e-8);
        EXPECT_NEAR(fit.sigma_hat_sq, ref.ssr / 300, 1e-9);
    }
}

TEST(FitAr1, ResidualsOrthogonalToRegressor) {
    const auto x = random_walk(400, 9);
    const Window w(x, 400);
    const auto fit = fit_ar1(w);
    const auto xd = demean(w);
    double dot = 0, scale = 0;
    for (std::size_t j = 0; j < 400; ++j) {
        const double u = x[j + 1] - fit.mu_hat - fit.delta_hat * x[j];
        dot += xd[j] * u;
        scale += std::fabs(xd[j] * u);
    }
    EXPECT_LE(std::fabs(dot), 1e-10 * scale);
}

TEST(FitAr1, DegenerateRegressor) {
    const std::vector<double> x(30, 2.0);
    try {
        fit_ar1(Window(x, 29));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateRegressor);
    }
}

TEST(FitAr1, UnitRootEstimateNearOne) {
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto x = random_walk(10000, 1000 + seed);
        const double d = fit_ar1(Window(x, 10000)).delta_hat;
        inside += d > 0.99 && d < 1.01;
    }
    EXPECT_GE(inside, 198);
}

TEST(FitAr1, LocationAndScaleInvariance) {
    auto x = random_walk(250, 21);
    const auto base = fit_ar1(Window(x, 250));
    std::vector<double> shifted = x, scaled = x;
    for (auto& v : shifted) v += 1e3;
    for (auto& v : scaled) v *= 7.5;
    const auto fs = fit_ar1(Window(shifted, 250));
    const auto fk = fit_ar1(Window(scaled, 250));
    EXPECT_NEAR(fs.delta_hat, base.delta_hat, 1e-8 * std::fabs(base.delta_hat));
    EXPECT_NEAR(fs.sigma_hat_sq, base.sigma_hat_sq, 1e-8 * base.sigma_hat_sq);
    EXPECT_NEAR(fs.sum_sq_demeaned, base.sum_sq_demeaned, 1e-8 * base.sum_sq_demeaned);
    EXPECT_NEAR(fk.delta_hat, base.delta_hat, 1e-8 * std::fabs(base.delta_hat));
    EXPECT_NEAR(fk.sigma_hat_sq, 56.25 * base.sigma_hat_sq, 1e-8 * 56.25 * base.sigma_hat_sq);
    EXPECT_NEAR(fk.sum_sq_demeaned, 56.25 * base.sum_sq_demeaned, 1e-8 * 56.25 * base.sum_sq_demeaned);
}

TEST(FitAdf, LagZeroMatchesAr1) {
    const auto x = random_walk(500, 17);
    const Window w(x, 500);
    const auto a = fit_ar1(w);
    const auto b = fit_adf(w, 0);
    EXPECT_NEAR(b.delta_hat, a.delta_hat, 1e-12);
    EXPECT_NEAR(b.mu_hat, a.mu_hat, 1e-10);
    EXPECT_NEAR(b.sigma_hat_sq, a.sigma_hat_sq, 1e-10 * a.sigma_hat_sq);
    EXPECT_NEAR(b.sum_sq_demeaned, a.sum_sq_demeaned, 1e-10 * a.sum_sq_demeaned);
    EXPECT_TRUE(b.phi.empty());
}

TEST(FitAdf, RecoversNoiselessAr2Reparameterization) {
    const double a1 = 1.3, a2 = -0.4;  // roots inside the unit circle except none at 1
    std::vector<double> x = {1.0, 2.0};
    for (int t = 2; t < 60; ++t) x.push_back(a1 * x[t - 1] + a2 * x[t - 2] + 0.5);
    const auto fit = fit_adf(Window(x, 59), 1);
    EXPECT_NEAR(fit.delta_hat, a1 + a2, 1e-9);
    ASSERT_EQ(fit.phi.size(), 1u);
    EXPECT_NEAR(fit.phi[0], -a2, 1e-9);
}

TEST(FitAdf, ResidualsOrthogonalToDesign) {
    const auto x = random_walk(300, 5);
    const std::size_t L = 3;
    const auto fit = fit_adf(Window(x, 300), L);
    ASSERT_EQ(fit.residuals.size(), 300 - L);
    for (std::size_t col = 0; col < 2 + L; ++col) {
        double dot = 0, scale = 0;
        for (std::size_t k = 0; k < fit.residuals.size(); ++k) {
            const std::size_t t = L + 1 + k;
            double v = 1.0;
            if (col == 1) v = x[t - 1];
            if (col >= 2) v = x[t - (col - 1)] - x[t - col];
            dot += v * fit.residuals[k];
            scale += std::fabs(v * fit.residuals[k]);
        }
        EXPECT_LE(std::fabs(dot), 1e-8 * scale) << "column " << col;
    }
}

TEST(FitAdf, MatchesEigenNormalEquations) {
    const auto x = random_walk(200, 44);
    const std::size_t L = 2, first = L + 1, tau = 200;
    const std::size_t m = tau - first + 1;
    Eigen::MatrixXd X(m, 2 + L);
    Eigen::VectorXd y(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t t = first + k;
        X(k, 0) = 1.0;
        X(k, 1) = x[t - 1];
        for (std::size_t j = 1; j <= L; ++j) X(k, 1 + j) = x[t - j] - x[t - j - 1];
        y(k) = x[t];
    }
    const Eigen::VectorXd beta = (X.transpose() * X).ldlt().solve(X.transpose() * y);
    const auto fit = fit_adf(Window(x, tau), L);
    EXPECT_NEAR(fit.mu_hat, beta(0), 1e-7);
    EXPECT_NEAR(fit.delta_hat, beta(1), 1e-9);
    EXPECT_NEAR(fit.phi[0], beta(2), 1e-8);
    EXPECT_NEAR(fit.phi[1], beta(3), 1e-8);
    const Eigen::VectorXd u = y - X * beta;
    const double s2 = u.squaredNorm() / static_cast<double>(m - 4);
    const Eigen::MatrixXd inv = (X.transpose() * X).inverse();
    EXPECT_NEAR(fit.t_stats[1], beta(3) / std::sqrt(s2 * inv(3, 3)), 1e-6);
}

TEST(FitAdf, SingularDesign) {
    // Exact linear trend: the lagged difference is constant and collinear with the intercept.
    std::vector<double> x;
    for (int t = 0; t < 40; ++t) x.push_back(2.0 * t);
    try {
        fit_adf(Window(x, 39), 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_TRUE(e.kind() == ErrorKind::SingularDesign || e.kind() == ErrorKind::DegenerateRegressor);
    }
}

TEST(FitAdf, InsufficientObservations) {
    const auto x = random_walk(30, 1);
    EXPECT_THROW(fit_adf(Window(x, 10), 4), Error);
}

TEST(SelectLag, ZeroMaxLag) {
    const auto x = random_walk(200, 2);
    EXPECT_EQ(select_lag(Window(x, 200), 0, 0.05), 0u);
}

TEST(SelectLag, WhiteNoiseDifferencesChooseZero) {
    int zero = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto x = random_walk(300, 5000 + seed);
        zero += select_lag(Window(x, 300), 6, 0.05) == 0;
    }
    // Six asymptotically independent 5% tests: P(L = 0) = 0.95^6, band of four binomial s.d.
    const double p0 = std::pow(0.95, 6);
    const double sd = std::sqrt(p0 * (1 - p0) * 500);
    EXPECT_NEAR(zero, 500 * p0, 4 * sd);
}

TEST(SelectLag, DetectsStrongSingleLag) {
    int hits = 0;
    const int reps = 200;
    for (int r = 0; r < reps; ++r) {
        Rng rng(derive_seed(31, r));
        // Differences follow dx_t = 0.5 dx_{t-1} + e, i.e. a2 = -0.5 in levels.
        std::vector<double> x = {0.0, 0.0};
        for (int t = 2; t < 400; ++t) x.push_back(x[t - 1] + 0.5 * (x[t - 1] - x[t - 2]) + 0.05 * rng.normal());
        hits += select_lag(Window(x, 399), 3, 0.01) == 1;
    }
    EXPECT_GE(hits, 0.95 * reps);
}

TEST(SelectLag, RejectsBadLevel) {
    const auto x = random_walk(100, 2);
    EXPECT_THROW(select_lag(Window(x, 100), 2, 0.0), Error);
    EXPECT_THROW(select_lag(Window(x, 100), 2, 1.0), Error);
}

TEST(RecursiveLeastSquares, MatchesBatchAtEveryStep) {
    const auto x = random_walk(200, 8);
    RecursiveLeastSquares rls(2);
    for (std::size_t t = 1; t <= 200; ++t) {
        const double row[2] = {1.0, x[t - 1]};
        rls.add(row, x[t]);
        if (t < 8) continue;
        const auto ref = naive_ar1(x, t);
        const auto beta = rls.coefficients();
        EXPECT_NEAR(beta[1], ref.slope, 1e-9 * std::max(1.0, std::fabs(ref.slope)));
        EXPECT_NEAR(rls.ssr(), ref.ssr, 1e-8 * std::max(1.0, ref.ssr));
    }
}
