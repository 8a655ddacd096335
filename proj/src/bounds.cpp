#include <sbr/bounds.hpp>

#include <cmath>
#include <string>

#include <sbr/sita.hpp>
#include <sbr/tags.hpp>

namespace sbr {

namespace {
void require_light_load(double arrival_rate, double r) {
    if (!(r > 1.0)) throw HypothesisError("bound requires r > 1");
    if (!(arrival_rate > 0.0) || !(arrival_rate * r < 1.0))
        throw HypothesisError("bound requires arrival_rate * r < 1 (got " +
                              std::to_string(arrival_rate * r) + ")");
}
} // namespace

double tags_lower_bound(double arrival_rate, double r) {
    require_light_load(arrival_rate, r);
    return arrival_rate * r;
}

double sita_upper_bound(double arrival_rate, double r) {
    require_light_load(arrival_rate, r);
    const double sq = std::sqrt(r);
    const double shrink = 1.0 - 1.0 / r;
    return arrival_rate * (sq - 1.0) * (sq - 1.0) / (sq * shrink * shrink);
}

double ratio_lower_bound(double r) {
    if (!(r > 1.0)) throw std::domain_error("ratio_lower_bound: requires r > 1");
    const double sq = std::sqrt(r);
    return (sq + 1.0) * (sq + 1.0) / sq;
}

BoundReport verify_bounds(const BoundedPareto& dist, double arrival_rate, double slack) {
    if (dist.alpha() != 1.0)
        throw HypothesisError("closed-form bounds are stated for alpha == 1 only");
    require_light_load(arrival_rate, dist.r());

    BoundReport rep;
    rep.r = dist.r();
    rep.arrival_rate = arrival_rate;
    rep.slack = slack;
    rep.tags_lower = tags_lower_bound(arrival_rate, rep.r);
    rep.sita_upper = sita_upper_bound(arrival_rate, rep.r);
    rep.ratio_lower = ratio_lower_bound(rep.r);

    auto tags = optimal_tags_threshold(dist, arrival_rate);
    auto sita = optimal_sita_cutoff(dist, arrival_rate);
    rep.tags_threshold = tags.optimal_threshold;
    rep.sita_cutoff = sita.optimal_threshold;
    rep.computed_tags = tags.optimal_value;
    rep.computed_sita = sita.optimal_value;
    rep.computed_ratio = rep.computed_tags / rep.computed_sita;

    rep.all_hold = rep.computed_tags > rep.tags_lower;
    rep.ratio_at_least_lower = rep.computed_ratio >= rep.ratio_lower;
    rep.sita_within_upper_slack = rep.computed_sita <= rep.sita_upper * (1.0 + slack);
    return rep;
}

} // namespace sbr
