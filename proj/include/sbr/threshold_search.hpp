#pragma once

#include <functional>

#include <sbr/policy.hpp>

namespace sbr {

// Minimize a unimodal-ish objective over thresholds s in [lo, hi] (lo >= 1).
// Strategy: dense log-spaced grid scan (grid_points, endpoints exact) to
// bracket the best value, then golden-section refinement of the bracketing
// triple down to a relative interval width of rel_tol. Objectives may return
// +inf on infeasible regions. The number of objective calls is reported.
ThresholdSearchResult minimize_threshold(const std::function<double(double)>& objective,
                                         double lo, double hi,
                                         int grid_points = 1024,
                                         double rel_tol = 1e-8);

} // namespace sbr
