#pragma once

#include <sbr/mg1.hpp>

namespace sbr {

// Result of evaluating a two-server size-based policy at a fixed threshold s.
// Infeasible thresholds (either station at load >= 1) carry an infinite
// total_wait rather than throwing, so optimizers can scan freely.
struct PolicyEvaluation {
    double threshold = 0.0;
    StationEvaluation station1;
    StationEvaluation station2;
    double fraction_to_2 = 0.0; // fraction of arrivals that reach server 2
    double total_wait = 0.0;    // mean waiting time over all jobs
    bool station1_stable = false;
    bool station2_stable = false;
    bool feasible() const { return station1_stable && station2_stable; }
};

struct ThresholdSearchResult {
    double optimal_threshold = 0.0;
    double optimal_value = 0.0; // +inf when no feasible threshold exists
    long evaluations = 0;
    bool feasible = false;
};

} // namespace sbr
