#include "powiv/iv_closed_form.hpp"

#include <cmath>
#include <numbers>

#include "powiv/error.hpp"

namespace powiv {

namespace {

const double kSqrtTwoPi = std::sqrt(2.0 * std::numbers::pi);
constexpr double kDiscriminantNoise = 1e-12;

IVOutcome failure(IVStatus status) { return IVOutcome{status, std::nullopt, std::nullopt, std::nullopt}; }

IVOutcome accept(double xi, RootBranch branch)
{
    if (!(xi > 0.0) || !std::isfinite(xi))
        return failure(branch == RootBranch::Linear ? IVStatus::DegenerateLinear : IVStatus::NonPositiveRoot);
    return IVOutcome{IVStatus::Solved, std::nullopt, xi, branch};
}

} // namespace

std::string_view to_string(IVStatus status)
{
    switch (status) {
    case IVStatus::Solved: return "Solved";
    case IVStatus::NegativeDiscriminant: return "NegativeDiscriminant";
    case IVStatus::WrongSignCondition: return "WrongSignCondition";
    case IVStatus::NonPositiveRoot: return "NonPositiveRoot";
    case IVStatus::DegenerateLinear: return "DegenerateLinear";
    }
    return "Unknown";
}

std::string_view to_string(RootBranch branch)
{
    switch (branch) {
    case RootBranch::PlusRoot: return "PlusRoot";
    case RootBranch::MinusRoot: return "MinusRoot";
    case RootBranch::Linear: return "Linear";
    }
    return "Unknown";
}

Intermediates compute_intermediates(const MarketState& market, const PowerOptionSpec& spec)
{
    market.validate();
    spec.validate();
    if (!(market.tau > 0.0))
        throw Error(ErrorCode::NonPositiveTau, "compute_intermediates: tau must be > 0");

    const double a = spec.alpha;
    const double log_k = spec.log_effective_strike();
    const double log_x = log_k - market.rate * market.tau;
    // ln(K_eff / X) is exactly r tau.
    const double log_f = a * std::log(market.spot) + (a - 1.0) * (log_k - log_x);
    const double log_fx = log_f - log_x;

    Intermediates out;
    out.big_x = std::exp(log_x);
    out.big_f = std::exp(log_f);
    out.log_f_over_x = log_fx;
    out.big_w = 2.0 * a - 1.0 + (a - 1.0) * log_fx;
    out.kind = spec.kind;
    return out;
}

QuadraticIV quadratic_coefficients(const Intermediates& inter, double call_price, double alpha)
{
    if (!(call_price > 0.0))
        throw Error(ErrorCode::InvalidArgument, "quadratic_coefficients: call price must be > 0");
    if (!(alpha > 0.0))
        throw Error(ErrorCode::InvalidArgument, "quadratic_coefficients: alpha must be > 0");

    const double f = inter.big_f;
    const double x = inter.big_x;
    QuadraticIV q;
    q.a = f * inter.big_w + x;
    q.b = kSqrtTwoPi * ((f - x) - 2.0 * call_price);
    q.c = 2.0 * (inter.log_f_over_x / alpha) * (f - x);
    q.discriminant = q.b * q.b - 4.0 * q.a * q.c;
    return q;
}

double effective_discriminant(const QuadraticIV& quad, const ClosedFormOptions& options)
{
    double d = quad.discriminant;
    if (d < 0.0 && (options.repair_discriminant || d >= -kDiscriminantNoise * quad.b * quad.b))
        d = 0.0;
    return d;
}

IVOutcome solve_largest_admissible_root(const QuadraticIV& quad, const ClosedFormOptions& options)
{
    const double a = quad.a;
    const double b = quad.b;
    const double c = quad.c;

    if (a == 0.0) {
        if (b == 0.0) return failure(IVStatus::DegenerateLinear);
        return accept(-c / b, RootBranch::Linear);
    }

    const double disc = effective_discriminant(quad, options);
    if (disc < 0.0) return failure(IVStatus::NegativeDiscriminant);
    const double sqrt_disc = std::sqrt(disc);

    if (a > 0.0) {
        if (b >= 0.0) return failure(IVStatus::WrongSignCondition);
        // -b > 0, so the numerator has no cancellation.
        return accept((-b + sqrt_disc) / (2.0 * a), RootBranch::PlusRoot);
    }

    // a < 0: root = (-b - sqrt D) / 2a. When b < 0 the numerator cancels, so
    // use the conjugate form 2c / (-b + sqrt D).
    const double xi = b < 0.0 ? 2.0 * c / (-b + sqrt_disc) : (-b - sqrt_disc) / (2.0 * a);
    return accept(xi, RootBranch::MinusRoot);
}

IVOutcome implied_vol_closed_form(const MarketState& market, const PowerOptionSpec& spec,
                                  double call_price, const ClosedFormOptions& options)
{
    const Intermediates inter = compute_intermediates(market, spec);
    const QuadraticIV quad = quadratic_coefficients(inter, call_price, spec.alpha);
    IVOutcome out = solve_largest_admissible_root(quad, options);
    if (out.solved())
        out.sigma = *out.xi / std::sqrt(market.tau);
    return out;
}

IVOutcome corrado_miller_vanilla(const MarketState& market, double strike, double call_price,
                                 const ClosedFormOptions& options)
{
    return implied_vol_closed_form(market, PowerOptionSpec{1.0, strike, PowerKind::Type1}, call_price, options);
}

} // namespace powiv
