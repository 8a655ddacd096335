#pragma once

#include <sbr/bounded_pareto.hpp>
#include <sbr/policy.hpp>

namespace sbr {

// Size-interval splitting: jobs with size <= s go to server 1, the rest to
// server 2. Sizes are known on arrival, each server is M/G/1 FCFS under
// Poisson splitting. total_wait is the size-weighted mix of the two stations'
// waits. s = 1 sends everything to server 2, s = r everything to server 1.
PolicyEvaluation evaluate_sita(const BoundedPareto& dist, double lambda, double s);

// Best size cutoff for the mean wait, over s in [1, r].
ThresholdSearchResult optimal_sita_cutoff(const BoundedPareto& dist, double lambda,
                                          double rel_tol = 1e-8);

// Cutoff that balances the *work* (load) between the two servers:
// the s with E[X; X <= s] = E[X; X > s]. Independent of lambda.
double load_balancing_cutoff(const BoundedPareto& dist);

} // namespace sbr
