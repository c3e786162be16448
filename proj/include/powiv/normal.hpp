#pragma once

namespace powiv {

/// A value known to lie in [0, 1].
class Probability {
public:
    /// Clamps tiny excursions outside [0, 1] caused by rounding.
    explicit Probability(double value);

    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

private:
    double value_;
};

/// Standard normal cumulative distribution function.
///
/// Evaluated through the complementary error function, N(x) = erfc(-x/sqrt 2)/2,
/// which keeps relative accuracy in both tails. Absolute error is below 1e-15
/// on the whole real line (glibc's erfc is accurate to about one ulp). Inputs
/// beyond +-40 saturate to exactly 1 or 0.
Probability std_normal_cdf(double x);

/// Truncated Taylor series of N(x) around zero:
///
///     N(x) ~ 1/2 + (x - x^3/6 + x^5/40 - x^7/336 + ...) / sqrt(2 pi)
///
/// `num_terms` counts odd powers, so `num_terms == 3` stops after x^5. Used
/// only to validate the derivation of the quadratic IV estimator; pricing
/// always goes through std_normal_cdf.
double std_normal_cdf_series(double x, int num_terms);

} // namespace powiv
