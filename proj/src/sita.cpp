#include <sbr/sita.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

#include <sbr/threshold_search.hpp>

namespace sbr {

PolicyEvaluation evaluate_sita(const BoundedPareto& dist, double lambda, double s) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::domain_error("evaluate_sita: arrival_rate must be positive and finite");
    if (!(s >= 1.0) || !(s <= dist.r()))
        throw std::domain_error("evaluate_sita: threshold outside [1, r]");

    PolicyEvaluation ev;
    ev.threshold = s;
    // both split probabilities via the stable zeroth partial moment -- the
    // complement 1 - cdf(s) cancels to garbage when s hugs either endpoint
    const double F = dist.partial_moment(0, 1.0, s); // size <= s: server 1
    const double tail = dist.partial_moment(0, s, dist.r());
    ev.fraction_to_2 = tail;

    // Poisson splitting: each station is M/G/1 with the conditional moments
    ServiceMoments m1{1.0, 1.0}, m2{1.0, 1.0};
    if (F > 0.0)
        m1 = {dist.partial_moment(1, 1.0, s) / F, dist.partial_moment(2, 1.0, s) / F};
    if (tail > 0.0)
        m2 = {dist.partial_moment(1, s, dist.r()) / tail,
              dist.partial_moment(2, s, dist.r()) / tail};
    ev.station1 = pk_wait_or_infinity(lambda * F, m1);
    ev.station2 = pk_wait_or_infinity(lambda * tail, m2);
    ev.station1_stable = std::isfinite(ev.station1.mean_wait);
    ev.station2_stable = std::isfinite(ev.station2.mean_wait);
    ev.total_wait = ev.feasible()
                        ? F * ev.station1.mean_wait + tail * ev.station2.mean_wait
                        : std::numeric_limits<double>::infinity();
    return ev;
}

ThresholdSearchResult optimal_sita_cutoff(const BoundedPareto& dist, double lambda,
                                          double rel_tol) {
    auto objective = [&](double s) { return evaluate_sita(dist, lambda, s).total_wait; };
    return minimize_threshold(objective, 1.0, dist.r(), 1024, rel_tol);
}

double load_balancing_cutoff(const BoundedPareto& dist) {
    const double r = dist.r();
    // E[X; X <= s] - E[X; X > s] is strictly increasing, negative at 1,
    // positive at r: bisect in log space
    auto imbalance = [&](double s) {
        return dist.partial_moment(1, 1.0, s) - dist.partial_moment(1, s, r);
    };
    double llo = 0.0, lhi = std::log(r);
    for (int i = 0; i < 200 && (lhi - llo) > 1e-13; ++i) {
        double lm = 0.5 * (llo + lhi);
        (imbalance(std::exp(lm)) < 0.0 ? llo : lhi) = lm;
    }
    return std::exp(0.5 * (llo + lhi));
}

} // namespace sbr
