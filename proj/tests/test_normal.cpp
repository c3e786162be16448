#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "powiv/error.hpp"
#include "powiv/normal.hpp"

using namespace powiv;

// Frozen values from tests/oracles/compute_expected.py (mpmath, 50 digits).
constexpr double kCdfAtOne = 0.84134474606854294859;
constexpr double kCdfAtHalf = 0.69146246127401310364;

TEST(StdNormalCdf, CentreIsOneHalf)
{
    EXPECT_EQ(std_normal_cdf(0.0).value(), 0.5);
}

TEST(StdNormalCdf, MatchesConvergedSeriesAtOne)
{
    EXPECT_NEAR(std_normal_cdf(1.0), kCdfAtOne, 1e-15);
    // Same value from our own series summed far past convergence.
    EXPECT_NEAR(std_normal_cdf_series(1.0, 40), kCdfAtOne, 1e-15);
}

TEST(StdNormalCdf, ReflectionAtFixedPoint)
{
    EXPECT_NEAR(std_normal_cdf(1.234) + std_normal_cdf(-1.234), 1.0, 1e-14);
}

TEST(StdNormalCdf, SaturatesFarOut)
{
    EXPECT_EQ(std_normal_cdf(41.0).value(), 1.0);
    EXPECT_EQ(std_normal_cdf(-41.0).value(), 0.0);
    EXPECT_EQ(std_normal_cdf(std::numeric_limits<double>::infinity()).value(), 1.0);
    EXPECT_GT(std_normal_cdf(-37.0).value(), 0.0);
}

TEST(StdNormalCdf, RejectsNan)
{
    EXPECT_THROW(std_normal_cdf(std::nan("")), Error);
}

TEST(StdNormalCdf, PropertyReflectionAndMonotone)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-8.0, 8.0);
    for (int i = 0; i < 20000; ++i) {
        const double x = dist(rng);
        const double y = dist(rng);
        ASSERT_NEAR(std_normal_cdf(x) + std_normal_cdf(-x), 1.0, 1e-14) << x;
        const auto [lo, hi] = std::minmax(x, y);
        ASSERT_LE(std_normal_cdf(lo).value(), std_normal_cdf(hi).value()) << lo << " " << hi;
    }
}

TEST(StdNormalCdfSeries, ZeroIsOneHalfForAnyLength)
{
    for (int n : {1, 2, 5, 30}) EXPECT_EQ(std_normal_cdf_series(0.0, n), 0.5);
}

TEST(StdNormalCdfSeries, ThreePrintedTerms)
{
    const double expected = 0.5 + (1.0 - 1.0 / 6.0 + 1.0 / 40.0) / std::sqrt(2.0 * std::numbers::pi);
    EXPECT_NEAR(std_normal_cdf_series(1.0, 3), expected, 1e-15);
}

TEST(StdNormalCdfSeries, ConvergesAtHalf)
{
    EXPECT_NEAR(std_normal_cdf_series(0.5, 20), kCdfAtHalf, 1e-10);
    EXPECT_NEAR(std_normal_cdf_series(0.5, 20), std_normal_cdf(0.5), 1e-10);
}

TEST(StdNormalCdfSeries, PropertyAgreesOnUnitInterval)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int i = 0; i < 5000; ++i) {
        const double x = dist(rng);
        ASSERT_LE(std::abs(std_normal_cdf_series(x, 25) - std_normal_cdf(x)), 1e-10) << x;
    }
}

TEST(StdNormalCdfSeries, ErrorShrinksWithMoreTerms)
{
    double previous = 1.0;
    for (int n = 1; n <= 12; ++n) {
        const double err = std::abs(std_normal_cdf_series(1.0, n) - kCdfAtOne);
        EXPECT_LT(err, previous) << n;
        previous = err;
    }
}

TEST(StdNormalCdfSeries, RejectsZeroTerms)
{
    EXPECT_THROW(std_normal_cdf_series(0.3, 0), Error);
}
