#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sbr {

// First two moments of a service-time distribution.
struct ServiceMoments {
    double m1 = 0.0;
    double m2 = 0.0;
};

// Thrown when an M/G/1 station is asked for a steady-state wait at load >= 1.
struct UnstableStationError : std::runtime_error {
    explicit UnstableStationError(double load_)
        : std::runtime_error("station unstable: load = " + std::to_string(load_)), load(load_) {}
    double load;
};

struct StationEvaluation {
    double arrival_rate = 0.0;
    double load = 0.0;
    double mean_wait = 0.0; // finite iff load < 1
};

inline void validate_moments(const ServiceMoments& m) {
    if (!(m.m1 > 0.0) || !std::isfinite(m.m1) || !std::isfinite(m.m2))
        throw std::domain_error("ServiceMoments: m1 must be positive and finite");
    // m2 >= m1^2 up to round-off (equality for deterministic service)
    if (m.m2 < m.m1 * m.m1 * (1.0 - 1e-12))
        throw std::domain_error("ServiceMoments: m2 < m1^2 is not a valid moment pair");
}

// Pollaczek-Khinchine mean waiting time of an M/G/1 FCFS station:
// W = rate * m2 / (2 * (1 - rate*m1)). Throws UnstableStationError at load >= 1.
inline StationEvaluation pk_wait(double arrival_rate, const ServiceMoments& m) {
    if (arrival_rate < 0.0 || !std::isfinite(arrival_rate))
        throw std::domain_error("pk_wait: arrival_rate must be nonnegative and finite");
    if (arrival_rate == 0.0) return {0.0, 0.0, 0.0};
    validate_moments(m);
    double load = arrival_rate * m.m1;
    if (load >= 1.0) throw UnstableStationError(load);
    return {arrival_rate, load, arrival_rate * m.m2 / (2.0 * (1.0 - load))};
}

// Same evaluation, but an unstable station comes back with an infinite wait
// instead of a throw. Used by the policy evaluators and optimizers, which
// treat instability as an infinite objective.
inline StationEvaluation pk_wait_or_infinity(double arrival_rate, const ServiceMoments& m) {
    if (arrival_rate == 0.0) return {0.0, 0.0, 0.0};
    validate_moments(m);
    double load = arrival_rate * m.m1;
    if (load >= 1.0)
        return {arrival_rate, load, std::numeric_limits<double>::infinity()};
    return {arrival_rate, load, arrival_rate * m.m2 / (2.0 * (1.0 - load))};
}

} // namespace sbr
