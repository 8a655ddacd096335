#include <sbr/threshold_search.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sbr {

ThresholdSearchResult minimize_threshold(const std::function<double(double)>& objective,
                                         double lo, double hi,
                                         int grid_points, double rel_tol) {
    if (!(lo >= 1.0) || !(hi > lo))
        throw std::domain_error("minimize_threshold: need 1 <= lo < hi");
    if (grid_points < 3) grid_points = 3;

    long evals = 0;
    auto f = [&](double s) {
        ++evals;
        double v = objective(s);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    // dense log-spaced scan first: the objective is cheap and can have an
    // infeasible plateau (+inf) on either side, so bracket before refining
    std::vector<double> xs(grid_points), vs(grid_points);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < grid_points; ++i)
        xs[i] = std::exp(llo + (lhi - llo) * i / (grid_points - 1));
    xs.front() = lo;
    xs.back() = hi;

    int best = 0;
    for (int i = 0; i < grid_points; ++i) {
        vs[i] = f(xs[i]);
        if (vs[i] < vs[best]) best = i;
    }

    ThresholdSearchResult res;
    double bx = xs[best], bv = vs[best];
    if (std::isinf(bv)) { // nothing feasible anywhere on the grid
        res.optimal_threshold = bx;
        res.optimal_value = bv;
        res.evaluations = evals;
        res.feasible = false;
        return res;
    }

    // golden-section refinement inside the bracketing triple
    double a = xs[best > 0 ? best - 1 : 0];
    double b = xs[best + 1 < grid_points ? best + 1 : grid_points - 1];
    if (b > a) {
        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - invphi * (b - a);
        double d = a + invphi * (b - a);
        double fc = f(c), fd = f(d);
        while ((b - a) > rel_tol * std::max(1.0, std::abs(b))) {
            if (fc < fd) {
                b = d; d = c; fd = fc;
                c = b - invphi * (b - a);
                fc = f(c);
            } else {
                a = c; c = d; fc = fd;
                d = a + invphi * (b - a);
                fd = f(d);
            }
        }
        double mid = 0.5 * (a + b);
        double fm = f(mid);
        if (fm < bv) { bv = fm; bx = mid; }
        if (fc < bv) { bv = fc; bx = c; }
        if (fd < bv) { bv = fd; bx = d; }
    }

    res.optimal_threshold = bx;
    res.optimal_value = bv;
    res.evaluations = evals;
    res.feasible = std::isfinite(bv);
    return res;
}

} // namespace sbr
