#pragma once

#include <sbr/bounded_pareto.hpp>
#include <sbr/policy.hpp>

namespace sbr {

// Moments of min(X, s): what server 1 actually serves per arriving job when
// every job is first run there with a cap of s.
ServiceMoments truncated_service_moments(const BoundedPareto& dist, double s);

// Task assignment with guessing: every job starts on server 1 and is killed
// at age s; killed jobs restart from scratch on server 2. Server 2's arrival
// stream (rate lambda * P(X > s)) is treated as Poisson. A killed job pays
// its server-1 wait, the full budget s, and then the server-2 wait.
PolicyEvaluation evaluate_tags(const BoundedPareto& dist, double lambda, double s);

// Best cutoff age for the mean wait, over s in [1, r].
ThresholdSearchResult optimal_tags_threshold(const BoundedPareto& dist, double lambda,
                                             double rel_tol = 1e-8);

} // namespace sbr
