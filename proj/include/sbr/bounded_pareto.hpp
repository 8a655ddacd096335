#pragma once

#include <stdexcept>

namespace sbr {

// Bounded Pareto distribution on [1, r] with shape alpha:
//   f(x) = alpha * x^(-alpha-1) / (1 - r^-alpha),  1 <= x <= r
// alpha may be any finite nonzero real (negative values are allowed;
// alpha = -1 gives the uniform density on [1, r]).
class BoundedPareto {
public:
    BoundedPareto(double alpha, double r);

    double alpha() const { return alpha_; }
    double r() const { return r_; }

    double pdf(double x) const;
    double cdf(double x) const;      // 0 below 1, 1 above r
    double quantile(double u) const; // u in [0, 1]; quantile(0) = 1, quantile(1) = r

    // partial_moment(k, a, b) = integral over [a, b] of x^k f(x) dx.
    // Requires 1 <= a <= b <= r. Uses the logarithmic branch when k == alpha
    // (closed form has a removable singularity there).
    double partial_moment(double k, double a, double b) const;

    double mean() const;           // partial_moment(1, 1, r)
    double second_moment() const;  // partial_moment(2, 1, r)

private:
    double alpha_;
    double r_;
    double norm_;     // alpha / (1 - r^-alpha), the density prefactor
    double one_minus_r_pow_;  // 1 - r^-alpha, kept for cdf/quantile
};

} // namespace sbr
