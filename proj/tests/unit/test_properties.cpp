#include <gtest/gtest.h>

#include <cmath>

#include "svadf/dgp.hpp"
#include "svadf/recursive.hpp"

using namespace svadf;

namespace {

PriceSeries random_series(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    dgp::DgpSpec spec;
    spec.n = n;
    spec.seed = seed;
    spec.x0 = 10.0 * rng.normal();
    if (rng.uniform() < 0.5) spec.bubble = dgp::BubbleSpec{0.2 + 0.3 * rng.uniform(), 0.85, 1.0, 0.5};
    spec.vol = rng.uniform() < 0.5 ? dgp::VolSpec::constant(0.1 + rng.uniform()) : dgp::VolSpec::log_ar1(0.5);
    return dgp::simulate(spec);
}

double rel_gap(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

}  // namespace

class PathProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(PathProperties, IncrementalMatchesRefit) {
    const auto x = random_series(GetParam(), 150 + GetParam() * 17 % 200);
    for (Variant v : {Variant::Coefficient, Variant::TType}) {
        recursive::RecursiveConfig cfg;
        cfg.variant = v;
        const auto path = recursive::recursive_path(x, cfg);
        for (std::size_t i = 0; i < path.size(); ++i) {
            ASSERT_LT(rel_gap(path.values[i], recursive::stat_at(x, path.taus[i], v)), 1e-8)
                << "tau=" << path.taus[i];
        }
    }
}

TEST_P(PathProperties, AffineInvariance) {
    const auto x = random_series(GetParam() + 1000, 300);
    std::vector<double> y(x.values().begin(), x.values().end());
    for (auto& v : y) v = 3.7 * v - 250.0;
    for (Variant v : {Variant::Coefficient, Variant::TType}) {
        recursive::RecursiveConfig cfg;
        cfg.variant = v;
        const auto a = recursive::recursive_path(x, cfg);
        const auto b = recursive::recursive_path(PriceSeries(y), cfg);
        for (std::size_t i = 0; i < a.size(); ++i) ASSERT_LT(rel_gap(b.values[i], a.values[i]), 1e-8);
    }
}

TEST_P(PathProperties, DeterministicForSeed) {
    const auto a = random_series(GetParam(), 250);
    const auto b = random_series(GetParam(), 250);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t t = 0; t < a.size(); ++t) ASSERT_EQ(a.values()[t], b.values()[t]);
    const auto pa = recursive::recursive_path(a, {});
    const auto pb = recursive::recursive_path(b, {});
    EXPECT_EQ(pa.values, pb.values);
}

INSTANTIATE_TEST_SUITE_P(Seeds, PathProperties, ::testing::Range<std::uint64_t>(1, 21));
