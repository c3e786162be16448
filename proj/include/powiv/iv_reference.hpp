#pragma once

#include <cstdint>

#include "powiv/pricing.hpp"

namespace powiv {

struct SolverConfig {
    double tolerance = 1e-12;     ///< absolute, in sigma units
    int max_iterations = 200;
    double bracket_low = 1e-6;
    double bracket_high = 4.0;

    void validate() const;
};

struct IterativeIV {
    double sigma = 0.0;
    int iterations = 0;
    /// The price was found to be non-monotone in sigma inside the bracket; the
    /// root returned lies in the leftmost sub-interval that straddles the target.
    bool non_monotone = false;
};

/// Implied volatility by bracketed root finding on price_power_call.
///
/// The upper bracket end is doubled up to 10 times if the quote is above the
/// price there, and the lower end halved up to 10 times if below. The price is
/// sampled on a log-spaced grid across the final bracket; if the sampled slope
/// changes sign, the search is confined to the leftmost sampled interval that
/// straddles the target. Within that interval Boost's TOMS 748 solver (bisection
/// safeguarded inverse-cubic/quadratic steps) runs to `tolerance`.
///
/// Throws NoBracket when the quote is unattainable and MaxIterations when the
/// solver stops early.
IterativeIV implied_vol_iterative(const MarketState& market, const PowerOptionSpec& spec,
                                  double call_price, const SolverConfig& config = {});

} // namespace powiv
