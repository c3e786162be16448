#include "powiv/normal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "powiv/error.hpp"

namespace powiv {

Probability::Probability(double value) : value_(std::clamp(value, 0.0, 1.0)) {}

Probability std_normal_cdf(double x)
{
    if (std::isnan(x))
        throw Error(ErrorCode::InvalidArgument, "std_normal_cdf: x is NaN");
    if (x > 40.0) return Probability(1.0);
    if (x < -40.0) return Probability(0.0);
    return Probability(0.5 * std::erfc(-x / std::numbers::sqrt2));
}

double std_normal_cdf_series(double x, int num_terms)
{
    if (num_terms < 1)
        throw Error(ErrorCode::InvalidArgument, "std_normal_cdf_series: num_terms must be >= 1");

    // Term k is (-1)^k x^(2k+1) / (2^k k! (2k+1)).
    const double x2 = x * x;
    double power_over_fact = x; // (-1)^k x^(2k+1) / (2^k k!)
    double sum = 0.0;
    for (int k = 0; k < num_terms; ++k) {
        sum += power_over_fact / (2.0 * k + 1.0);
        power_over_fact *= -x2 / (2.0 * (k + 1));
    }
    return 0.5 + sum / std::sqrt(2.0 * std::numbers::pi);
}

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveTau: return "NonPositiveTau";
    case ErrorCode::MissingSigma: return "MissingSigma";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

} // namespace powiv
