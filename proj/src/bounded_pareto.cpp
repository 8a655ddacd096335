#include "sbr/bounded_pareto.hpp"

#include <cmath>
#include <string>

namespace sbr {

namespace {
// Width of the k == alpha branch. Inside it the exact antiderivative is
// log(b/a); the expm1 form below stays accurate right up to this cutoff.
constexpr double kSingularTol = 1e-9;
} // namespace

BoundedPareto::BoundedPareto(double alpha, double r) : alpha_(alpha), r_(r) {
    if (!std::isfinite(alpha) || alpha == 0.0)
        throw std::invalid_argument("BoundedPareto: alpha must be finite and nonzero");
    if (!std::isfinite(r) || r <= 1.0)
        throw std::invalid_argument("BoundedPareto: r must be finite and > 1");
    // 1 - r^-alpha = -expm1(-alpha*log(r)); avoids cancellation for small |alpha*log r|.
    one_minus_r_pow_ = -std::expm1(-alpha * std::log(r));
    norm_ = alpha / one_minus_r_pow_;
}

double BoundedPareto::pdf(double x) const {
    if (x < 1.0 || x > r_) return 0.0;
    return norm_ * std::pow(x, -alpha_ - 1.0);
}

double BoundedPareto::cdf(double x) const {
    if (x <= 1.0) return 0.0;
    if (x >= r_) return 1.0;
    // (1 - x^-alpha) / (1 - r^-alpha), both sides via expm1
    return std::expm1(-alpha_ * std::log(x)) / std::expm1(-alpha_ * std::log(r_));
}

double BoundedPareto::quantile(double u) const {
    if (u < 0.0 || u > 1.0 || !std::isfinite(u))
        throw std::domain_error("BoundedPareto::quantile: u must be in [0, 1]");
    if (u == 0.0) return 1.0;
    if (u == 1.0) return r_;
    // x = (1 - u*(1 - r^-alpha))^(-1/alpha), stable via log1p
    double x = std::exp(-std::log1p(-u * one_minus_r_pow_) / alpha_);
    if (x < 1.0) x = 1.0;
    if (x > r_) x = r_;
    return x;
}

double BoundedPareto::partial_moment(double k, double a, double b) const {
    // absorb round-off from callers that computed a or b from quantiles
    if (a < 1.0 && a > 1.0 - 1e-12) a = 1.0;
    if (b > r_ && b < r_ * (1.0 + 1e-12)) b = r_;
    if (a < 1.0 || b > r_ || a > b)
        throw std::domain_error("BoundedPareto::partial_moment: need 1 <= a <= b <= r, got a=" +
                                std::to_string(a) + " b=" + std::to_string(b));
    if (a == b) return 0.0;
    // integral of x^(k-alpha-1) over [a,b]:
    //   (b^d - a^d)/d with d = k-alpha, written as a^d*expm1(d*log(b/a))/d
    //   so small d loses nothing to cancellation; d == 0 gives log(b/a).
    double d = k - alpha_;
    double L = std::log(b / a);
    double base = (std::abs(d) <= kSingularTol) ? L : std::pow(a, d) * std::expm1(d * L) / d;
    return norm_ * base;
}

double BoundedPareto::mean() const { return partial_moment(1.0, 1.0, r_); }

double BoundedPareto::second_moment() const { return partial_moment(2.0, 1.0, r_); }

} // namespace sbr
