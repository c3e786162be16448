#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "powiv/error.hpp"
#include "powiv/normal.hpp"
#include "powiv/pricing.hpp"

using namespace powiv;

namespace {

// mpmath oracle, tests/oracles/compute_expected.py
constexpr double kAtmVanilla = 0.059785288105789530598;
constexpr double kType1Alpha2 = 0.18745456792197330647;

const std::vector<double> kAlphas{0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0};

} // namespace

TEST(Payoff, Type1)
{
    EXPECT_NEAR(payoff_type1(1.2, {2.0, 1.0, PowerKind::Type1}), 0.44, 1e-15);
    EXPECT_EQ(payoff_type1(0.8, {2.0, 1.0, PowerKind::Type1}), 0.0);
    EXPECT_NEAR(payoff_type1(1.1, {1.0, 0.9, PowerKind::Type1}), 0.2, 1e-15);
}

TEST(Payoff, Type2)
{
    EXPECT_NEAR(payoff_type2(1.2, {2.0, 1.0, PowerKind::Type2}), 0.44, 1e-15);
    EXPECT_EQ(payoff_type2(1.2, {2.0, 1.3, PowerKind::Type2}), 0.0);
}

TEST(Payoff, UnitStrikeMakesKindsAgree)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> spot(0.2, 3.0), alpha(0.1, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const PowerOptionSpec spec{alpha(rng), 1.0, PowerKind::Type1};
        const double s = spot(rng);
        ASSERT_EQ(payoff_type1(s, spec), payoff_type2(s, spec));
    }
}

TEST(VanillaCall, ZeroVolLimit)
{
    const auto p = price_vanilla_call({1.2, 0.0, 1.0, 1e-12}, 1.0);
    EXPECT_NEAR(p.price, 0.2, 1e-12);
}

TEST(VanillaCall, AtTheMoneyIdentity)
{
    const auto p = price_vanilla_call({1.0, 0.0, 1.0, 0.15}, 1.0);
    EXPECT_NEAR(p.price, kAtmVanilla, 1e-14);
    // Same identity through the library CDF.
    EXPECT_NEAR(p.price, 2.0 * std_normal_cdf(0.075) - 1.0, 1e-15);
    EXPECT_NEAR(p.d2, p.d1 - 0.15, 1e-15);
}

TEST(VanillaCall, BoundsAndExpiry)
{
    const MarketState m{1.1, 0.03, 0.7, 0.25};
    const double c = price_vanilla_call(m, 1.0).price;
    EXPECT_GE(c, std::max(1.1 - std::exp(-0.03 * 0.7), 0.0));
    EXPECT_LE(c, 1.1);

    const auto expiry = price_vanilla_call({1.1, 0.03, 0.0, std::nullopt}, 1.0);
    EXPECT_NEAR(expiry.price, 0.1, 1e-15);
    EXPECT_TRUE(std::isinf(expiry.d1));
}

TEST(VanillaCall, MissingSigma)
{
    try {
        price_vanilla_call({1.0, 0.0, 1.0, std::nullopt}, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingSigma);
    }
}

TEST(PowerCall, Errors)
{
    const PowerOptionSpec spec{2.0, 1.0, PowerKind::Type1};
    try {
        price_power_call({1.0, 0.0, -0.5, 0.2}, spec);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonPositiveTau);
    }
    try {
        price_power_call({1.0, 0.0, 0.5, std::nullopt}, spec);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingSigma);
    }
    EXPECT_THROW(price_power_call({1.0, 0.0, 0.5, 0.2}, {0.0, 1.0, PowerKind::Type1}), Error);
    EXPECT_THROW(price_power_call({1.0, 0.0, 0.5, 0.2}, {1.0, -1.0, PowerKind::Type1}), Error);
    EXPECT_THROW(price_power_call({-1.0, 0.0, 0.5, 0.2}, spec), Error);
}

TEST(PowerCall, ExpiryReturnsPayoff)
{
    const PowerOptionSpec spec{2.0, 1.0, PowerKind::Type1};
    EXPECT_NEAR(price_power_call({1.2, 0.01, 0.0, std::nullopt}, spec).price, 0.44, 1e-15);
}

TEST(PowerCall, FrozenType1Alpha2)
{
    const auto p = price_power_call({1.0, 0.001, 1.0, 0.15}, {2.0, 0.9, PowerKind::Type1});
    EXPECT_NEAR(p.price, kType1Alpha2, 1e-14);
    EXPECT_NEAR(p.d2, p.d1 - 0.15, 1e-12);
}

TEST(PowerCall, AlphaOneTripleEquality)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> spot(0.5, 2.0), strike(0.5, 2.0), rate(-0.02, 0.1), tau(0.01, 3.0),
        vol(0.01, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const MarketState m{spot(rng), rate(rng), tau(rng), vol(rng)};
        const double k = strike(rng);
        const double vanilla = price_vanilla_call(m, k).price;
        ASSERT_NEAR(price_power_call(m, {1.0, k, PowerKind::Type1}).price, vanilla, 1e-12);
        ASSERT_NEAR(price_power_call(m, {1.0, k, PowerKind::Type2}).price, vanilla, 1e-12);
    }
}

TEST(PowerCall, UnitStrikeKindsCoincide)
{
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> spot(0.5, 2.0), rate(-0.02, 0.1), tau(0.01, 3.0), vol(0.01, 1.0),
        alpha(0.2, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const MarketState m{spot(rng), rate(rng), tau(rng), vol(rng)};
        const double a = alpha(rng);
        const auto p1 = price_power_call(m, {a, 1.0, PowerKind::Type1});
        const auto p2 = price_power_call(m, {a, 1.0, PowerKind::Type2});
        ASSERT_EQ(p1.price, p2.price);
        ASSERT_EQ(p1.d1, p2.d1);
    }
}

TEST(PowerCall, ZeroVolLimit)
{
    for (double a : kAlphas)
        for (double k : {0.8, 0.9, 1.0, 1.01, 1.2})
            for (double s : {0.8, 1.0, 1.3}) {
                const MarketState m{s, 0.02, 0.75, 1e-10};
                const PowerOptionSpec spec{a, k, PowerKind::Type1};
                const double limit = std::max(std::pow(s, a) * std::exp((a - 1.0) * 0.02 * 0.75) -
                                                  k * std::exp(-0.02 * 0.75),
                                              0.0);
                EXPECT_NEAR(price_power_call(m, spec).price, limit, 1e-8) << a << " " << k << " " << s;
                EXPECT_NEAR(zero_vol_price(m, spec), limit, 1e-14);
            }
}

TEST(PowerCall, MonotoneInSpot)
{
    for (PowerKind kind : {PowerKind::Type1, PowerKind::Type2})
        for (double a : kAlphas)
            for (double k : {0.9, 1.0, 1.01}) {
                double previous = 0.0;
                for (double s = 0.5; s <= 1.5; s += 0.01) {
                    const double p = price_power_call({s, 0.001, 0.5, 0.15}, {a, k, kind}).price;
                    ASSERT_GE(p, previous) << a << " " << k << " " << s;
                    previous = p;
                }
            }
}

TEST(PowerCall, DeepMoneynessStaysFinite)
{
    const PowerOptionSpec spec{2.0, 1.0, PowerKind::Type1};
    const auto deep_out = price_power_call({1e-30, 0.0, 1.0, 0.1}, spec);
    EXPECT_EQ(deep_out.price, 0.0);
    const auto deep_in = price_power_call({1e10, 0.0, 1.0, 0.1}, spec);
    EXPECT_TRUE(std::isfinite(deep_in.price));
    EXPECT_NEAR(deep_in.price / (1e20 * std::exp(0.5 * 2.0 * 0.01)), 1.0, 1e-12);
}

namespace {

// Discounted expectation of the payoff: composite Simpson over z in [-12, 12]
// of payoff(S_T(z)) phi(z).
double quadrature_price(const MarketState& m, const PowerOptionSpec& spec)
{
    const int n = 200000;
    const double lo = -12.0, hi = 12.0, h = (hi - lo) / n;
    const double sigma = *m.sigma;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double z = lo + i * h;
        const double st = m.spot * std::exp((m.rate - 0.5 * sigma * sigma) * m.tau + sigma * std::sqrt(m.tau) * z);
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * power_payoff(st, spec) * std::exp(-0.5 * z * z);
    }
    return std::exp(-m.rate * m.tau) * sum * h / 3.0 / std::sqrt(2.0 * std::numbers::pi);
}

} // namespace

TEST(PowerCall, MatchesQuadratureOfDiscountedPayoff)
{
    for (PowerKind kind : {PowerKind::Type1, PowerKind::Type2})
        for (double a : {0.4, 1.0, 1.6, 2.0})
            for (double k : {0.9, 1.0, 1.01})
                for (double sigma : {0.05, 0.15, 0.5}) {
                    const MarketState m{1.0, 0.001, 0.5, sigma};
                    const PowerOptionSpec spec{a, k, kind};
                    EXPECT_NEAR(price_power_call(m, spec).price, quadrature_price(m, spec), 1e-9)
                        << to_string(kind) << " a=" << a << " K=" << k << " s=" << sigma;
                }
}

TEST(PowerCall, MonteCarloOracleFrozenCase)
{
    // >= 1e6 exact lognormal draws, agreement within 3 standard errors.
    const MarketState m{1.0, 0.001, 1.0, 0.15};
    const PowerOptionSpec spec{2.0, 0.9, PowerKind::Type1};
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> z;
    const int n = 1'000'000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double st = std::exp((0.001 - 0.5 * 0.0225) + 0.15 * z(rng));
        const double v = std::exp(-0.001) * payoff_type1(st, spec);
        sum += v;
        sq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sq / n - mean * mean) / (n - 1));
    EXPECT_LE(std::abs(mean - price_power_call(m, spec).price), 3.0 * se);
}
