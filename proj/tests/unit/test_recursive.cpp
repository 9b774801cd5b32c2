#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "svadf/calibration.hpp"
#include "svadf/dgp.hpp"
#include "svadf/error.hpp"
#include "svadf/quantile.hpp"
#include "svadf/recursive.hpp"

using namespace svadf;
using recursive::RecursiveConfig;

namespace {

PriceSeries walk(std::size_t n, std::uint64_t seed, dgp::VolSpec vol = dgp::VolSpec::constant(1.0)) {
    dgp::DgpSpec s;
    s.n = n;
    s.seed = seed;
    s.vol = vol;
    return dgp::simulate(s);
}

PriceSeries geometric(std::size_t n, double root, double x0) {
    std::vector<double> x = {x0};
    for (std::size_t t = 0; t < n; ++t) x.push_back(root * x.back());
    return PriceSeries(x);
}

}  // namespace

TEST(Variant, ParseAndPrint) {
    EXPECT_EQ(parse_variant("coefficient"), Variant::Coefficient);
    EXPECT_EQ(parse_variant("t"), Variant::TType);
    EXPECT_EQ(to_string(Variant::TType), "ttype");
    EXPECT_THROW(parse_variant("sup"), Error);
}

TEST(InitialWindow, FloorAndValidation) {
    EXPECT_EQ(recursive::initial_window(1000, 0.1), 100u);
    EXPECT_EQ(recursive::initial_window(999, 0.1), 99u);
    EXPECT_THROW(recursive::initial_window(100, 0.0), Error);
    EXPECT_THROW(recursive::initial_window(100, 1.0), Error);
}

TEST(StatAt, NoiselessExplosiveCoefficient) {
    const auto s = geometric(30, 1.1, 5.0);
    EXPECT_NEAR(recursive::stat_at(s, 30, Variant::Coefficient), 3.0, 1e-10);
}

TEST(StatAt, TTypeMatchesDefinition) {
    const auto s = walk(300, 4);
    const auto fit = estimator::fit_ar1(estimator::Window(s.values(), 300));
    const double expected = std::sqrt(fit.sum_sq_demeaned / fit.sigma_hat_sq) * (fit.delta_hat - 1);
    EXPECT_NEAR(recursive::stat_at(s, 300, Variant::TType), expected, 1e-12 * std::fabs(expected));
    EXPECT_NEAR(recursive::stat_at(s, 300, Variant::Coefficient), 300 * (fit.delta_hat - 1), 1e-9);
}

TEST(StatAt, TTypeWithLagsReducesAtZero) {
    const auto s = walk(200, 6);
    EXPECT_NEAR(recursive::stat_at(s, 200, Variant::TType, 0), recursive::stat_at(s, 200, Variant::TType), 1e-12);
}

TEST(RecursivePath, ShapeAndEndpoint) {
    const auto s = walk(1000, 2);
    for (Variant v : {Variant::Coefficient, Variant::TType}) {
        RecursiveConfig cfg;
        cfg.variant = v;
        const auto p = recursive::recursive_path(s, cfg);
        ASSERT_EQ(p.size(), 1000u - 100u + 1u);
        EXPECT_EQ(p.taus.front(), 100u);
        EXPECT_EQ(p.taus.back(), 1000u);
        EXPECT_DOUBLE_EQ(p.fractions.back(), 1.0);
        for (std::size_t i = 1; i < p.size(); ++i) ASSERT_GT(p.fractions[i], p.fractions[i - 1]);
        const double last = recursive::stat_at(s, 1000, v);
        EXPECT_NEAR(p.values.back(), last, 1e-8 * std::max(1.0, std::fabs(last)));
    }
}

TEST(RecursivePath, NoiselessBubbleIsLinearInR) {
    const auto s = geometric(200, 1.1, 1.0);
    const auto p = recursive::recursive_path(s, {});
    for (std::size_t i = 0; i < p.size(); ++i) {
        EXPECT_NEAR(p.values[i], p.fractions[i] * 200 * 0.1, 1e-6) << "tau = " << p.taus[i];
    }
}

TEST(RecursivePath, IncrementalMatchesRefitWithLags) {
    const auto s = walk(400, 13, dgp::VolSpec::log_ar1(0.8));
    for (Variant v : {Variant::Coefficient, Variant::TType}) {
        RecursiveConfig cfg;
        cfg.variant = v;
        cfg.lag_order = 2;
        const auto p = recursive::recursive_path(s, cfg);
        for (std::size_t i = 0; i < p.size(); i += 7) {
            const double ref = recursive::stat_at(s, p.taus[i], v, 2);
            EXPECT_NEAR(p.values[i], ref, 1e-8 * std::max(1.0, std::fabs(ref)));
        }
    }
}

TEST(RecursivePath, AutoLagRecordsChoice) {
    const auto s = walk(500, 3);
    RecursiveConfig cfg;
    cfg.auto_lag = true;
    const auto p = recursive::recursive_path(s, cfg);
    EXPECT_LE(p.lag_order, cfg.max_lag);
}

TEST(RecursivePath, FlatStretchYieldsMarkers) {
    std::vector<double> x(200, 10.0);
    for (std::size_t t = 120; t < x.size(); ++t) x[t] = 10.0 + 0.1 * std::sin(static_cast<double>(t));
    const auto p = recursive::recursive_path(PriceSeries(x), {});
    EXPECT_TRUE(std::isnan(p.values.front()));
    EXPECT_TRUE(std::isfinite(p.values.back()));
}

TEST(RecursivePath, TooShort) {
    const auto s = walk(40, 1);
    try {
        recursive::recursive_path(s, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::WindowSize);
    }
}

TEST(NullDistribution, CoefficientMedianNegative) {
    std::vector<double> stats;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto s = walk(500, derive_seed(77, seed));
        stats.push_back(recursive::stat_at(s, 500, Variant::Coefficient));
    }
    EXPECT_LT(empirical_quantile(stats, 0.5), 0.0);
}

TEST(NullDistribution, TTypeUpperQuantileMatchesCalibration) {
    std::vector<double> stats;
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        stats.push_back(recursive::stat_at(walk(1000, derive_seed(501, seed)), 1000, Variant::TType));
    }
    const std::size_t sizes[] = {1000};
    const auto table = calibration::calibrate_null(sizes, 2000, 0.9, dgp::VolSpec::constant(1.0), Variant::TType, 902);
    EXPECT_NEAR(empirical_quantile(stats, 0.9), table.values[0], 0.15);
}
