#pragma once

#include <optional>
#include <string_view>

#include "powiv/pricing.hpp"

namespace powiv {

/// Derived quantities of the quadratic IV estimator.
///
///   X = K_eff exp(-r tau),   F = S^a (K_eff / X)^(a-1),   W = 2a - 1 + (a-1) ln(F/X)
///
/// where K_eff is K (Type1) or K^a (Type2). Everything is formed from logs;
/// log_f_over_x is kept separately so that c >= 0 holds exactly.
struct Intermediates {
    double big_f = 0.0;
    double big_x = 0.0;
    double big_w = 0.0;
    double log_f_over_x = 0.0;
    PowerKind kind = PowerKind::Type1;
};

/// Coefficients of (FW + X) xi^2 + sqrt(2 pi)[(F - X) - 2C] xi + 2 (1/a) ln(F/X) (F - X) = 0
/// in xi = sigma sqrt(tau).
struct QuadraticIV {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double discriminant = 0.0; ///< b^2 - 4ac
};

enum class IVStatus {
    Solved,
    NegativeDiscriminant,
    WrongSignCondition, ///< a > 0 and (F - X) - 2C >= 0: no positive root
    NonPositiveRoot,
    DegenerateLinear,
};

enum class RootBranch {
    PlusRoot,  ///< (-b + sqrt(D)) / 2a, leading coefficient positive
    MinusRoot, ///< (-b - sqrt(D)) / 2a, leading coefficient negative
    Linear,    ///< a == 0
};

std::string_view to_string(IVStatus status);
std::string_view to_string(RootBranch branch);

struct IVOutcome {
    IVStatus status = IVStatus::NegativeDiscriminant;
    std::optional<double> sigma;
    std::optional<double> xi;
    std::optional<RootBranch> branch;

    bool solved() const noexcept { return status == IVStatus::Solved; }
};

struct ClosedFormOptions {
    /// Replace any negative discriminant by zero instead of reporting
    /// NegativeDiscriminant. Off by default: forcing real roots this way
    /// inflates the dispersion of the estimates.
    bool repair_discriminant = false;
};

/// Throws NonPositiveTau unless tau > 0.
Intermediates compute_intermediates(const MarketState& market, const PowerOptionSpec& spec);

QuadraticIV quadratic_coefficients(const Intermediates& inter, double call_price, double alpha);

/// Picks the largest admissible root of the quadratic.
///
/// a > 0: needs D >= 0 and b < 0, takes the plus branch.
/// a < 0: needs D >= 0, takes the minus branch (c >= 0 makes it the larger one).
/// a = 0: solves b xi + c = 0.
/// A discriminant in [-1e-12 b^2, 0) is treated as rounding noise and set to 0.
/// A root that is not strictly positive is reported as NonPositiveRoot
/// (DegenerateLinear for a = 0). `xi` is filled in but `sigma` is not; the
/// caller owns tau.
IVOutcome solve_largest_admissible_root(const QuadraticIV& quad, const ClosedFormOptions& options = {});

/// Discriminant after the noise clamp (and the optional repair). dnr
/// bookkeeping counts observations where this is >= 0.
double effective_discriminant(const QuadraticIV& quad, const ClosedFormOptions& options = {});

/// Closed-form implied volatility of a power call quote.
IVOutcome implied_vol_closed_form(const MarketState& market, const PowerOptionSpec& spec,
                                  double call_price, const ClosedFormOptions& options = {});

/// The a = 1 case, which reduces to the Corrado-Miller quadratic.
IVOutcome corrado_miller_vanilla(const MarketState& market, double strike, double call_price,
                                 const ClosedFormOptions& options = {});

} // namespace powiv
