#pragma once

#include <optional>
#include <string_view>

namespace powiv {

/// Payoff convention of a power call.
enum class PowerKind {
    Type1, ///< (S_T^alpha - K)^+
    Type2, ///< (S_T^alpha - K^alpha)^+
};

std::string_view to_string(PowerKind kind);
std::optional<PowerKind> parse_power_kind(std::string_view text);

/// Contract terms of a European power call.
struct PowerOptionSpec {
    double alpha = 1.0;
    double strike = 1.0;
    PowerKind kind = PowerKind::Type1;

    /// Throws InvalidArgument unless alpha > 0 and strike > 0.
    void validate() const;

    /// The strike as it enters the pricing formulas: K for Type1, K^alpha for Type2.
    double effective_strike() const;
    /// Natural log of effective_strike(), computed without forming the power.
    double log_effective_strike() const;
};

/// Market observables at valuation time.
struct MarketState {
    double spot = 1.0;
    double rate = 0.0;
    double tau = 1.0;                ///< time to expiry
    std::optional<double> sigma;     ///< true volatility, when known

    /// Throws InvalidArgument on spot <= 0, tau < 0 or a non-positive sigma.
    void validate() const;
};

struct PricingBreakdown {
    double d1 = 0.0;
    double d2 = 0.0;
    double price = 0.0;
};

double payoff_type1(double terminal_spot, const PowerOptionSpec& spec);
double payoff_type2(double terminal_spot, const PowerOptionSpec& spec);
/// Dispatches on spec.kind.
double power_payoff(double terminal_spot, const PowerOptionSpec& spec);

/// Black-Scholes European call on the plain underlying.
///
/// At tau == 0 the intrinsic value max(S - K, 0) is returned and d1/d2 are
/// set to +-infinity (0 exactly at the money). Throws MissingSigma when
/// tau > 0 and no sigma is supplied.
PricingBreakdown price_vanilla_call(const MarketState& market, double strike);

/// Closed-form price of a power call.
///
/// Type1:
///   C = S^a exp([(a-1) r + a(a-1) s^2/2] tau) N(d1 + (a-1) s sqrt(tau)) - K exp(-r tau) N(d2)
///   d1 = [ln(S^a / K) + a (r + s^2/2) tau] / (a s sqrt(tau)),  d2 = d1 - s sqrt(tau)
/// Type2 replaces K by K^a in both the discount term and d1.
///
/// The growth factor in front of N(.) is assembled in log space together with
/// S^a. Negative rounding residue is floored at zero. Deep in/out of the money
/// N(.) saturates, so the price equals its asymptote.
///
/// At tau == 0 the payoff at the current spot is returned. Throws
/// NonPositiveTau for tau < 0 and MissingSigma when tau > 0 and sigma is absent.
PricingBreakdown price_power_call(const MarketState& market, const PowerOptionSpec& spec);

/// Limit of price_power_call as sigma -> 0+.
double zero_vol_price(const MarketState& market, const PowerOptionSpec& spec);

} // namespace powiv
