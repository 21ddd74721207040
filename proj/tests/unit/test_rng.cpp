#include "shci/rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using shci::Rng;

TEST(Rng, SameSeedSameStream)
{
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a(), b());
    }
}

TEST(Rng, SplitIgnoresParentConsumption)
{
    Rng a(7);
    Rng b(7);
    for (int i = 0; i < 50; ++i) {
        (void)b();
    }
    Rng ca = a.split(3);
    Rng cb = b.split(3);
    for (int i = 0; i < 20; ++i) {
        EXPECT_EQ(ca(), cb());
    }
    EXPECT_NE(a.split(3).key(), a.split(4).key());
}

TEST(Rng, UniformMoments)
{
    Rng r(1);
    double sum = 0.0;
    double sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sq += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.005);
    EXPECT_NEAR(sq / n - (sum / n) * (sum / n), 1.0 / 12.0, 0.003);
}

TEST(Rng, NormalMoments)
{
    Rng r(2);
    double sum = 0.0;
    double sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        sum += z;
        sq += z * z;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.01);
    EXPECT_NEAR(sq / n, 1.0, 0.01);
}

TEST(Rng, BelowStaysInRange)
{
    Rng r(3);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const auto v = r.below(7);
        ASSERT_LT(v, 7U);
        ++counts[v];
    }
    for (int c : counts) {
        EXPECT_NEAR(c, 10000, 400);
    }
}

TEST(Rng, SampleWithoutReplacementDistinct)
{
    Rng r(4);
    const auto s = r.sample_without_replacement(100, 30);
    ASSERT_EQ(s.size(), 30U);
    std::set<std::size_t> uniq(s.begin(), s.end());
    EXPECT_EQ(uniq.size(), 30U);
    EXPECT_LT(*std::max_element(s.begin(), s.end()), 100U);
    const auto all = r.sample_without_replacement(10, 10);
    EXPECT_EQ(std::set<std::size_t>(all.begin(), all.end()).size(), 10U);
}
