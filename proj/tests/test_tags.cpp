#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include <sbr/tags.hpp>

using namespace sbr;

namespace {

// independent assembly from unconditional partial moments only
double tags_total_oracle(const BoundedPareto& d, double lam, double s) {
    const double r = d.r();
    const double p2 = 1.0 - d.cdf(s);
    const double tm1 = d.partial_moment(1, 1, s) + s * p2;
    const double tm2 = d.partial_moment(2, 1, s) + s * s * p2;
    const double w1 = lam * tm2 / (2.0 * (1.0 - lam * tm1));
    double w2 = 0.0;
    if (p2 > 0.0)
        w2 = lam * d.partial_moment(2, s, r) / (2.0 * (1.0 - lam * d.partial_moment(1, s, r)));
    return w1 + p2 * (s + w2);
}

} // namespace

TEST_SUITE("tags") {

TEST_CASE("truncated service moments") {
    BoundedPareto d(1.0, 100.0);
    // cap at the maximum: nothing truncated
    auto full = truncated_service_moments(d, 100.0);
    CHECK(full.m1 == doctest::Approx(d.mean()).epsilon(1e-14));
    CHECK(full.m2 == doctest::Approx(d.second_moment()).epsilon(1e-14));
    // cap at the minimum: every job is cut at exactly 1
    auto unit = truncated_service_moments(d, 1.0);
    CHECK(unit.m1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(unit.m2 == doctest::Approx(1.0).epsilon(1e-14));
    // interior cap agrees with direct assembly
    double s = 20.0, p2 = 1.0 - d.cdf(s);
    auto mid = truncated_service_moments(d, s);
    CHECK(mid.m1 == doctest::Approx(d.partial_moment(1, 1, s) + s * p2).epsilon(1e-14));
    CHECK(mid.m1 < d.mean());
    CHECK_THROWS_AS(truncated_service_moments(d, 0.5), std::domain_error);
}

TEST_CASE("frozen evaluation at an interior cap") {
    BoundedPareto d(1.0, 100.0);
    auto ev = evaluate_tags(d, 0.005, 20.0);
    CHECK(ev.total_wait == doctest::Approx(0.9064214373292208).epsilon(1e-12));
    CHECK(ev.station1.mean_wait == doctest::Approx(0.09011130499279404).epsilon(1e-12));
    CHECK(ev.station2.mean_wait == doctest::Approx(0.2036757753265401).epsilon(1e-12));
    CHECK(ev.station1.load == doctest::Approx(0.019170365017949453).epsilon(1e-12));
    CHECK(ev.station2.load == doctest::Approx(0.00812847430522273).epsilon(1e-12));
    CHECK(ev.fraction_to_2 == doctest::Approx(1.0 - 0.9595959595959596).epsilon(1e-12));
    CHECK(ev.feasible());
}

TEST_CASE("cap at the maximum degenerates to one plain station") {
    BoundedPareto d(1.0, 100.0);
    auto ev = evaluate_tags(d, 0.005, 100.0);
    CHECK(ev.fraction_to_2 == 0.0);
    CHECK(ev.station2.mean_wait == 0.0);
    CHECK(ev.station2.load == 0.0);
    CHECK(ev.total_wait == doctest::Approx(0.255953067864349).epsilon(1e-12));
}

TEST_CASE("matches the independent waiting-time assembly") {
    struct Case { double alpha, r, lam, s; };
    for (auto c : {Case{1.0, 100.0, 0.005, 20.0}, Case{1.5, 1000.0, 0.002, 31.0},
                   Case{0.8, 200.0, 0.003, 14.0}, Case{-1.0, 10.0, 0.05, 4.0},
                   Case{2.5, 300.0, 0.02, 2.5}}) {
        BoundedPareto d(c.alpha, c.r);
        auto ev = evaluate_tags(d, c.lam, c.s);
        CHECK_MESSAGE(ev.total_wait == doctest::Approx(tags_total_oracle(d, c.lam, c.s)).epsilon(1e-12),
                      "alpha=" << c.alpha << " r=" << c.r << " s=" << c.s);
    }
    BoundedPareto d15(1.5, 1000.0);
    CHECK(evaluate_tags(d15, 0.002, 31.0).total_wait ==
          doctest::Approx(0.1984248734783399).epsilon(1e-12));
}

TEST_CASE("restarting burns capacity: offered work exceeds the size stream") {
    BoundedPareto d(1.0, 100.0);
    const double lam = 0.005;
    const double baseline = lam * d.mean();
    for (double s : {2.0, 5.0, 20.0, 60.0}) {
        auto ev = evaluate_tags(d, lam, s);
        CHECK(ev.station1.load + ev.station2.load > baseline);
        // the second station's load is exactly the tail work restarted whole
        CHECK(ev.station2.load ==
              doctest::Approx(lam * d.partial_moment(1, s, 100.0)).epsilon(1e-14));
    }
    auto at_r = evaluate_tags(d, lam, 100.0);
    CHECK(at_r.station1.load + at_r.station2.load == doctest::Approx(baseline).epsilon(1e-14));
}

TEST_CASE("instability is flagged per station") {
    BoundedPareto d(1.0, 100.0);
    auto ev = evaluate_tags(d, 0.3, 2.0); // tail restarts swamp server 2
    CHECK(ev.station1_stable);
    CHECK_FALSE(ev.station2_stable);
    CHECK(std::isinf(ev.total_wait));

    auto both = evaluate_tags(d, 0.45, 50.0);
    CHECK_FALSE(both.feasible());
}

TEST_CASE("optimal cap for a light heavy-tailed stream sits at the top") {
    BoundedPareto d(1.0, 100.0);
    auto res = optimal_tags_threshold(d, 0.005);
    CHECK(res.feasible);
    CHECK(res.optimal_threshold == doctest::Approx(100.0).epsilon(1e-6));
    CHECK(res.optimal_value == doctest::Approx(0.255953067864349).epsilon(1e-10));
    CHECK(res.evaluations > 1024);
}

TEST_CASE("optimizer reports infeasibility when restarts always overload") {
    BoundedPareto d(1.0, 100.0);
    auto res = optimal_tags_threshold(d, 0.45); // 0.45 * mean > 2 even before restarts
    CHECK_FALSE(res.feasible);
    CHECK(std::isinf(res.optimal_value));
}

TEST_CASE("argument validation") {
    BoundedPareto d(1.0, 100.0);
    CHECK_THROWS_AS(evaluate_tags(d, 0.0, 10.0), std::domain_error);
    CHECK_THROWS_AS(evaluate_tags(d, 0.01, 0.0), std::domain_error);
    CHECK_THROWS_AS(evaluate_tags(d, 0.01, 200.0), std::domain_error);
}

} // TEST_SUITE
