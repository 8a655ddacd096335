#include <sbr/tags.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

#include <sbr/threshold_search.hpp>

namespace sbr {

ServiceMoments truncated_service_moments(const BoundedPareto& dist, double s) {
    if (!(s >= 1.0) || !(s <= dist.r()))
        throw std::domain_error("truncated_service_moments: s outside [1, r]");
    // tail mass via the zeroth partial moment: stays accurate when s -> r,
    // where 1 - cdf(s) cancels away
    const double tail = dist.partial_moment(0, s, dist.r());
    return {dist.partial_moment(1, 1.0, s) + s * tail,
            dist.partial_moment(2, 1.0, s) + s * s * tail};
}

PolicyEvaluation evaluate_tags(const BoundedPareto& dist, double lambda, double s) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::domain_error("evaluate_tags: arrival_rate must be positive and finite");
    if (!(s >= 1.0) || !(s <= dist.r()))
        throw std::domain_error("evaluate_tags: threshold outside [1, r]");

    PolicyEvaluation ev;
    ev.threshold = s;
    const double tail = dist.partial_moment(0, s, dist.r());
    ev.fraction_to_2 = tail;

    // server 1 sees every arrival and serves min(X, s); jobs that hit the cap
    // restart from scratch on server 2, whose (approximately Poisson) input
    // has rate lambda*tail and the conditional upper-tail size moments
    ev.station1 = pk_wait_or_infinity(lambda, truncated_service_moments(dist, s));
    ServiceMoments m2{1.0, 1.0};
    if (tail > 0.0)
        m2 = {dist.partial_moment(1, s, dist.r()) / tail,
              dist.partial_moment(2, s, dist.r()) / tail};
    ev.station2 = pk_wait_or_infinity(lambda * tail, m2);
    ev.station1_stable = std::isfinite(ev.station1.mean_wait);
    ev.station2_stable = std::isfinite(ev.station2.mean_wait);

    // waiting time = sojourn - size: W1 for everyone, plus the burned budget s
    // and the second wait for the overflow fraction
    ev.total_wait = ev.feasible()
                        ? ev.station1.mean_wait + tail * (s + ev.station2.mean_wait)
                        : std::numeric_limits<double>::infinity();
    return ev;
}

ThresholdSearchResult optimal_tags_threshold(const BoundedPareto& dist, double lambda,
                                             double rel_tol) {
    auto objective = [&](double s) { return evaluate_tags(dist, lambda, s).total_wait; };
    return minimize_threshold(objective, 1.0, dist.r(), 1024, rel_tol);
}

} // namespace sbr
