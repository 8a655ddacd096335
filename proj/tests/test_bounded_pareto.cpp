#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include <sbr/bounded_pareto.hpp>

#include "quadrature.hpp"

using sbr::BoundedPareto;

TEST_SUITE("bounded_pareto") {

TEST_CASE("constructor rejects bad parameters") {
    CHECK_THROWS_AS(BoundedPareto(0.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(BoundedPareto(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BoundedPareto(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(BoundedPareto(std::nan(""), 10.0), std::invalid_argument);
    CHECK_THROWS_AS(BoundedPareto(1.0, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
    CHECK_NOTHROW(BoundedPareto(-1.0, 10.0));
    CHECK_NOTHROW(BoundedPareto(0.5, 1.0 + 1e-9));
}

TEST_CASE("density values and support") {
    BoundedPareto d1(1.0, 10.0);
    CHECK(d1.pdf(0.5) == 0.0);
    CHECK(d1.pdf(10.5) == 0.0);
    CHECK(d1.pdf(1.0) == doctest::Approx(10.0 / 9.0).epsilon(1e-14));

    BoundedPareto d2(1.0, 100.0);
    CHECK(d2.pdf(10.0) == doctest::Approx(0.010101010101010102).epsilon(1e-14));

    // alpha = -1 is the uniform density on [1, r]
    BoundedPareto u(-1.0, 10.0);
    CHECK(u.pdf(2.0) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(u.pdf(9.0) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("density integrates to one") {
    for (auto [alpha, r] : std::vector<std::pair<double, double>>{
             {1.0, 10.0}, {0.5, 100.0}, {2.5, 1000.0}, {-1.0, 10.0}, {1.5, 1e6}}) {
        BoundedPareto d(alpha, r);
        double mass = testoracle::integrate_rel([&](double x) { return d.pdf(x); }, 1.0, r, 1e-12);
        CHECK_MESSAGE(mass == doctest::Approx(1.0).epsilon(1e-9),
                      "alpha=" << alpha << " r=" << r);
    }
}

TEST_CASE("cdf endpoints, values, monotonicity") {
    BoundedPareto d(1.0, 100.0);
    CHECK(d.cdf(1.0) == 0.0);
    CHECK(d.cdf(100.0) == 1.0);
    CHECK(d.cdf(0.2) == 0.0);
    CHECK(d.cdf(250.0) == 1.0);
    CHECK(d.cdf(10.0) == doctest::Approx(0.9090909090909091).epsilon(1e-14));

    double prev = -1.0;
    for (double x = 1.0; x <= 100.0; x *= 1.17) {
        double c = d.cdf(x);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("quantile endpoints and round trip") {
    for (auto [alpha, r] : std::vector<std::pair<double, double>>{
             {1.0, 10.0}, {1.0, 1e4}, {0.5, 100.0}, {2.5, 1000.0}, {-1.0, 10.0}}) {
        BoundedPareto d(alpha, r);
        CHECK(d.quantile(0.0) == 1.0);
        CHECK(d.quantile(1.0) == r);
        for (int i = 1; i < 40; ++i) {
            double u = i / 40.0;
            double x = d.quantile(u);
            CHECK(x >= 1.0);
            CHECK(x <= r);
            CHECK(d.cdf(x) == doctest::Approx(u).epsilon(1e-12));
        }
        for (double x = 1.0; x < r; x = x * 1.618 + 0.01) {
            double u = d.cdf(x);
            double back = d.quantile(u);
            // u loses |ln x| resolution as it saturates toward 1: allow the
            // round trip its conditioning, one ulp of u amplified by 1/(alpha*(1-u))
            double cond = 5e-16 / (std::abs(alpha) * std::max(1.0 - u, 1e-300));
            CHECK(back == doctest::Approx(x).epsilon(std::max(1e-12, cond)));
        }
    }
    BoundedPareto d(1.0, 10.0);
    CHECK_THROWS_AS(d.quantile(-0.1), std::domain_error);
    CHECK_THROWS_AS(d.quantile(1.1), std::domain_error);
}

TEST_CASE("quantile of uniform special case is linear") {
    BoundedPareto u(-1.0, 10.0);
    CHECK(u.quantile(0.5) == doctest::Approx(5.5).epsilon(1e-14));
    CHECK(u.quantile(0.25) == doctest::Approx(3.25).epsilon(1e-14));
}

TEST_CASE("partial moment normalization and frozen means") {
    BoundedPareto d(1.0, 100.0);
    CHECK(d.partial_moment(0, 1.0, 100.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.partial_moment(1, 1.0, 100.0) == doctest::Approx(4.651687056553628).epsilon(1e-13));
    CHECK(d.mean() == doctest::Approx(std::log(100.0) / (1.0 - 0.01)).epsilon(1e-14));
    // for this tail index the second moment collapses to r itself
    CHECK(d.second_moment() == doctest::Approx(100.0).epsilon(1e-13));

    BoundedPareto d2(2.0, 10.0);
    CHECK(d2.mean() == doctest::Approx(1.8181818181818181).epsilon(1e-13));

    BoundedPareto u(-1.0, 10.0);
    CHECK(u.mean() == doctest::Approx(5.5).epsilon(1e-13));
    CHECK(u.second_moment() == doctest::Approx(37.0).epsilon(1e-13));
}

TEST_CASE("partial moment additivity over abutting intervals") {
    BoundedPareto d(1.2, 500.0);
    for (double k : {0.0, 1.0, 2.0, 0.7}) {
        for (auto [a, b, c] : std::vector<std::array<double, 3>>{
                 {1.0, 3.0, 500.0}, {2.0, 50.0, 400.0}, {1.0, 499.0, 500.0}}) {
            double whole = d.partial_moment(k, a, c);
            double split = d.partial_moment(k, a, b) + d.partial_moment(k, b, c);
            CHECK_MESSAGE(split == doctest::Approx(whole).epsilon(1e-12),
                          "k=" << k << " a=" << a << " b=" << b << " c=" << c);
        }
    }
}

TEST_CASE("partial moment at the singular exponent and nearby") {
    // k == alpha makes the antiderivative logarithmic; the branch must agree
    // with its neighborhood
    BoundedPareto d(1.5, 50.0);
    double at = d.partial_moment(1.5, 2.0, 7.0);
    CHECK(at == doctest::Approx(1.8844745516809203).epsilon(1e-13));
    CHECK(d.partial_moment(1.5 + 1e-7, 2.0, 7.0) == doctest::Approx(at).epsilon(1e-5));
    CHECK(d.partial_moment(1.5 - 1e-7, 2.0, 7.0) == doctest::Approx(at).epsilon(1e-5));
    CHECK(d.partial_moment(1.5 + 1e-12, 2.0, 7.0) == doctest::Approx(at).epsilon(1e-10));
}

TEST_CASE("partial moment domain handling") {
    BoundedPareto d(1.0, 10.0);
    CHECK(d.partial_moment(1, 3.0, 3.0) == 0.0);
    CHECK_THROWS_AS(d.partial_moment(1, 0.5, 2.0), std::domain_error);
    CHECK_THROWS_AS(d.partial_moment(1, 1.0, 20.0), std::domain_error);
    CHECK_THROWS_AS(d.partial_moment(1, 5.0, 2.0), std::domain_error);
    // round-off sized excursions at the edges are absorbed
    CHECK(d.partial_moment(0, 1.0 - 1e-13, 10.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.partial_moment(0, 1.0, 10.0 + 1e-12) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("partial moment agrees with quadrature across random cases") {
    std::mt19937_64 gen(20240817);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        double alpha = 0.3 + 2.7 * unif(gen);
        if (i % 7 == 0) alpha = -(0.3 + 1.7 * unif(gen));
        double r = std::exp(std::log(2.0) + (std::log(1e5) - std::log(2.0)) * unif(gen));
        double k = 3.0 * unif(gen);
        if (i % 10 == 0) k = alpha + (unif(gen) - 0.5) * 2e-6; // near-singular
        double ea = std::log(r) * unif(gen), eb = std::log(r) * unif(gen);
        double a = std::exp(std::min(ea, eb)), b = std::exp(std::max(ea, eb));
        if (b <= a) continue;

        BoundedPareto d(alpha, r);
        double closed = d.partial_moment(k, a, b);
        double quad = testoracle::integrate_rel(
            [&](double x) { return std::pow(x, k) * d.pdf(x); }, a, b, 1e-13);
        CHECK_MESSAGE(closed == doctest::Approx(quad).epsilon(1e-10),
                      "alpha=" << alpha << " r=" << r << " k=" << k << " [" << a << "," << b
                               << "]");
    }
}

} // TEST_SUITE
