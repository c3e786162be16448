#include "powiv/iv_reference.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "powiv/error.hpp"

namespace powiv {

namespace {

constexpr int kMaxBracketExpansions = 10;
constexpr int kMonotonicitySamples = 64;

} // namespace

void SolverConfig::validate() const
{
    if (!(tolerance > 0.0))
        throw Error(ErrorCode::InvalidArgument, "solver tolerance must be > 0");
    if (max_iterations < 1)
        throw Error(ErrorCode::InvalidArgument, "solver max_iterations must be >= 1");
    if (!(bracket_low > 0.0) || !(bracket_high > bracket_low))
        throw Error(ErrorCode::InvalidArgument, "solver bracket must satisfy 0 < low < high");
}

IterativeIV implied_vol_iterative(const MarketState& market, const PowerOptionSpec& spec,
                                  double call_price, const SolverConfig& config)
{
    config.validate();
    spec.validate();
    if (!(market.tau > 0.0))
        throw Error(ErrorCode::NonPositiveTau, "implied_vol_iterative: tau must be > 0");
    if (!std::isfinite(call_price))
        throw Error(ErrorCode::InvalidArgument, "implied_vol_iterative: price must be finite");

    auto price_at = [&](double sigma) {
        MarketState m = market;
        m.sigma = sigma;
        return price_power_call(m, spec).price;
    };
    auto residual = [&](double sigma) { return price_at(sigma) - call_price; };

    double lo = config.bracket_low;
    double hi = config.bracket_high;
    double f_lo = residual(lo);
    double f_hi = residual(hi);
    for (int i = 0; i < kMaxBracketExpansions && f_hi < 0.0; ++i) {
        hi *= 2.0;
        f_hi = residual(hi);
    }
    for (int i = 0; i < kMaxBracketExpansions && f_lo > 0.0; ++i) {
        lo *= 0.5;
        f_lo = residual(lo);
    }
    if (f_lo == 0.0) return {lo, 0, false};
    if (f_hi == 0.0) return {hi, 0, false};

    // Sample the bracket to detect a non-monotone price and to pick the
    // leftmost interval with a sign change.
    std::vector<double> grid(kMonotonicitySamples + 1);
    std::vector<double> values(grid.size());
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / kMonotonicitySamples;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = i == 0 ? lo : (i + 1 == grid.size() ? hi : std::exp(log_lo + step * static_cast<double>(i)));
        values[i] = i == 0 ? f_lo : (i + 1 == grid.size() ? f_hi : residual(grid[i]));
    }

    bool non_monotone = false;
    int slope_sign = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double diff = values[i] - values[i - 1];
        // Ignore flat stretches at the rounding level.
        if (std::abs(diff) <= 1e-14 * (1.0 + std::abs(call_price))) continue;
        const int sign = diff > 0.0 ? 1 : -1;
        if (slope_sign != 0 && sign != slope_sign) non_monotone = true;
        slope_sign = sign;
    }

    std::size_t left = grid.size();
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (values[i - 1] == 0.0) return {grid[i - 1], 0, non_monotone};
        if ((values[i - 1] < 0.0) != (values[i] < 0.0)) {
            left = i - 1;
            break;
        }
    }
    // Both roots of a shallow dip can fall between two samples. Refine the
    // sampled minimum and split the bracket there.
    if (left == grid.size() && values.front() > 0.0) {
        const auto it = std::min_element(values.begin(), values.end());
        const std::size_t k = static_cast<std::size_t>(it - values.begin());
        if (k > 0 && k + 1 < grid.size()) {
            const auto [x_min, f_min] =
                boost::math::tools::brent_find_minima(residual, grid[k - 1], grid[k + 1], 52);
            if (f_min <= 0.0) {
                if (f_min == 0.0) return {x_min, 0, true};
                non_monotone = true;
                grid = {grid[k - 1], x_min};
                values = {values[k - 1], f_min};
                left = 0;
            }
        }
    }
    if (left == grid.size())
        throw Error(ErrorCode::NoBracket, "implied_vol_iterative: price " + std::to_string(call_price) +
                                              " is not attainable for sigma in [" + std::to_string(lo) +
                                              ", " + std::to_string(hi) + "]");

    const double tol = config.tolerance;
    auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol; };
    std::uintmax_t iterations = static_cast<std::uintmax_t>(config.max_iterations);
    const auto [a, b] = boost::math::tools::toms748_solve(residual, grid[left], grid[left + 1],
                                                          values[left], values[left + 1], stop, iterations);
    if (!stop(a, b))
        throw Error(ErrorCode::MaxIterations, "implied_vol_iterative: no convergence within " +
                                                  std::to_string(config.max_iterations) + " iterations");
    return {0.5 * (a + b), static_cast<int>(iterations), non_monotone};
}

} // namespace powiv
