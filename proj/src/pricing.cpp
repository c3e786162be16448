#include "powiv/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "powiv/error.hpp"
#include "powiv/normal.hpp"

namespace powiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double require_sigma(const MarketState& market, const char* where)
{
    if (!market.sigma)
        throw Error(ErrorCode::MissingSigma, std::string(where) + ": sigma is required");
    return *market.sigma;
}

void require_tau(const MarketState& market, const char* where)
{
    if (market.tau < 0.0)
        throw Error(ErrorCode::NonPositiveTau, std::string(where) + ": tau must be >= 0");
}

// d-terms at expiry, where only the sign of the log-moneyness survives.
PricingBreakdown expiry_breakdown(double log_moneyness, double payoff)
{
    const double d = log_moneyness > 0.0 ? kInf : (log_moneyness < 0.0 ? -kInf : 0.0);
    return {d, d, payoff};
}

} // namespace

std::string_view to_string(PowerKind kind)
{
    return kind == PowerKind::Type1 ? "type1" : "type2";
}

std::optional<PowerKind> parse_power_kind(std::string_view text)
{
    if (text == "type1" || text == "Type1" || text == "1") return PowerKind::Type1;
    if (text == "type2" || text == "Type2" || text == "2") return PowerKind::Type2;
    return std::nullopt;
}

void PowerOptionSpec::validate() const
{
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw Error(ErrorCode::InvalidArgument, "alpha must be a finite value > 0");
    if (!(strike > 0.0) || !std::isfinite(strike))
        throw Error(ErrorCode::InvalidArgument, "strike must be a finite value > 0");
}

double PowerOptionSpec::effective_strike() const
{
    return kind == PowerKind::Type1 ? strike : std::pow(strike, alpha);
}

double PowerOptionSpec::log_effective_strike() const
{
    return kind == PowerKind::Type1 ? std::log(strike) : alpha * std::log(strike);
}

void MarketState::validate() const
{
    if (!(spot > 0.0) || !std::isfinite(spot))
        throw Error(ErrorCode::InvalidArgument, "spot must be a finite value > 0");
    if (!std::isfinite(rate))
        throw Error(ErrorCode::InvalidArgument, "rate must be finite");
    if (std::isnan(tau) || !std::isfinite(tau))
        throw Error(ErrorCode::InvalidArgument, "tau must be finite");
    if (tau < 0.0)
        throw Error(ErrorCode::NonPositiveTau, "tau must be >= 0");
    if (sigma && (!(*sigma > 0.0) || !std::isfinite(*sigma)))
        throw Error(ErrorCode::InvalidArgument, "sigma must be a finite value > 0");
}

double payoff_type1(double terminal_spot, const PowerOptionSpec& spec)
{
    return std::max(std::pow(terminal_spot, spec.alpha) - spec.strike, 0.0);
}

double payoff_type2(double terminal_spot, const PowerOptionSpec& spec)
{
    return std::max(std::pow(terminal_spot, spec.alpha) - std::pow(spec.strike, spec.alpha), 0.0);
}

double power_payoff(double terminal_spot, const PowerOptionSpec& spec)
{
    return spec.kind == PowerKind::Type1 ? payoff_type1(terminal_spot, spec)
                                         : payoff_type2(terminal_spot, spec);
}

PricingBreakdown price_vanilla_call(const MarketState& market, double strike)
{
    market.validate();
    if (!(strike > 0.0))
        throw Error(ErrorCode::InvalidArgument, "strike must be > 0");

    const double S = market.spot;
    const double K = strike;
    const double tau = market.tau;
    if (tau == 0.0)
        return expiry_breakdown(std::log(S / K), std::max(S - K, 0.0));

    const double sigma = require_sigma(market, "price_vanilla_call");
    const double vol_sqrt_t = sigma * std::sqrt(tau);
    const double d1 = (std::log(S / K) + (market.rate + 0.5 * sigma * sigma) * tau) / vol_sqrt_t;
    const double d2 = d1 - vol_sqrt_t;
    const double price =
        S * std_normal_cdf(d1) - K * std::exp(-market.rate * tau) * std_normal_cdf(d2);
    return {d1, d2, std::max(price, 0.0)};
}

PricingBreakdown price_power_call(const MarketState& market, const PowerOptionSpec& spec)
{
    market.validate();
    spec.validate();
    require_tau(market, "price_power_call");

    const double a = spec.alpha;
    const double r = market.rate;
    const double tau = market.tau;
    const double log_s = std::log(market.spot);
    const double log_k = spec.log_effective_strike();

    if (tau == 0.0)
        return expiry_breakdown(a * log_s - log_k, power_payoff(market.spot, spec));

    const double sigma = require_sigma(market, "price_power_call");
    const double vol_sqrt_t = sigma * std::sqrt(tau);
    const double d1 = (a * log_s - log_k + a * (r + 0.5 * sigma * sigma) * tau) / (a * vol_sqrt_t);
    const double d2 = d1 - vol_sqrt_t;

    const double log_growth = ((a - 1.0) * r + 0.5 * a * (a - 1.0) * sigma * sigma) * tau;
    const double asset_leg = std::exp(a * log_s + log_growth) * std_normal_cdf(d1 + (a - 1.0) * vol_sqrt_t);
    const double strike_leg = std::exp(log_k - r * tau) * std_normal_cdf(d2);
    return {d1, d2, std::max(asset_leg - strike_leg, 0.0)};
}

double zero_vol_price(const MarketState& market, const PowerOptionSpec& spec)
{
    market.validate();
    spec.validate();
    const double a = spec.alpha;
    const double forward_leg = std::exp(a * std::log(market.spot) + (a - 1.0) * market.rate * market.tau);
    const double strike_leg = std::exp(spec.log_effective_strike() - market.rate * market.tau);
    return std::max(forward_leg - strike_leg, 0.0);
}

} // namespace powiv
