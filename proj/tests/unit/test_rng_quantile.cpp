#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "svadf/error.hpp"
#include "svadf/parallel.hpp"
#include "svadf/quantile.hpp"
#include "svadf/rng.hpp"

TEST(Rng, SameSeedSameStream) {
    svadf::Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.normal(), b.normal());
}

TEST(Rng, DistinctSeedsDiffer) {
    svadf::Rng a(1), b(2);
    int same = 0;
    for (int i = 0; i < 100; ++i) same += a.uniform() == b.uniform();
    EXPECT_EQ(same, 0);
}

TEST(Rng, UniformIsOpenInterval) {
    svadf::Rng r(7);
    for (int i = 0; i < 100000; ++i) {
        const double u = r.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Rng, NormalMoments) {
    svadf::Rng r(11);
    const int n = 200000;
    double s = 0, s2 = 0, s4 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        s += z;
        s2 += z * z;
        s4 += z * z * z * z;
    }
    EXPECT_NEAR(s / n, 0.0, 4.0 / std::sqrt(n));
    EXPECT_NEAR(s2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
    EXPECT_NEAR(s4 / n, 3.0, 4.0 * std::sqrt(96.0 / n));
}

TEST(DeriveSeed, StreamsAreDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t m = 0; m < 20; ++m) {
        for (std::uint64_t s = 0; s < 500; ++s) seen.insert(svadf::derive_seed(m, s));
    }
    EXPECT_EQ(seen.size(), 20u * 500u);
}

TEST(ParallelFor, ResultsIndependentOfWorkerCount) {
    auto run = [](unsigned workers) {
        std::vector<double> out(257);
        svadf::parallel_for(
            out.size(), [&](std::size_t i) { out[i] = svadf::Rng(svadf::derive_seed(9, i)).normal(); }, workers);
        return out;
    };
    EXPECT_EQ(run(1), run(4));
}

TEST(ParallelFor, RethrowsTaskFailure) {
    EXPECT_THROW(svadf::parallel_for(
                     50,
                     [](std::size_t i) {
                         if (i == 17) throw svadf::Error(svadf::ErrorKind::Data, "boom");
                     },
                     3),
                 svadf::Error);
}

TEST(EmpiricalQuantile, HandComputedType7) {
    const std::vector<double> x = {4, 1, 3, 2};
    EXPECT_DOUBLE_EQ(svadf::empirical_quantile(x, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(svadf::empirical_quantile(x, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(svadf::empirical_quantile(x, 1.0), 4.0);
    // h = 3 * 0.9 = 2.7 -> 3 + 0.7 * (4 - 3)
    EXPECT_DOUBLE_EQ(svadf::empirical_quantile(x, 0.9), 3.7);
    const std::vector<double> y = {10, 20, 30, 40, 50};
    EXPECT_DOUBLE_EQ(svadf::empirical_quantile(y, 0.1), 14.0);
}

TEST(EmpiricalQuantile, BatchMatchesSingle) {
    svadf::Rng r(3);
    std::vector<double> x(101);
    for (auto& v : x) v = r.normal();
    const std::vector<double> qs = {0.1, 0.5, 0.9};
    const auto batch = svadf::empirical_quantiles(x, qs);
    for (std::size_t i = 0; i < qs.size(); ++i) EXPECT_DOUBLE_EQ(batch[i], svadf::empirical_quantile(x, qs[i]));
}

TEST(EmpiricalQuantile, MonotoneInLevel) {
    svadf::Rng r(5);
    std::vector<double> x(333);
    for (auto& v : x) v = r.normal();
    double prev = -INFINITY;
    for (double q = 0.0; q <= 1.0; q += 0.01) {
        const double v = svadf::empirical_quantile(x, q);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(EmpiricalQuantile, RejectsBadInput) {
    const std::vector<double> empty;
    EXPECT_THROW(svadf::empirical_quantile(empty, 0.5), svadf::Error);
    const std::vector<double> x = {1, 2};
    EXPECT_THROW(svadf::empirical_quantile(x, 1.5), svadf::Error);
}
