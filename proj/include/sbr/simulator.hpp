#pragma once

#include <cstdint>

#include <sbr/bounded_pareto.hpp>

namespace sbr {

enum class Policy { SITA, TAGS };

struct SimConfig {
    std::uint64_t seed = 1;
    long num_jobs = 0;
    long warmup_jobs = 0;
    Policy policy = Policy::SITA;
    double threshold = 1.0;
    double arrival_rate = 0.0;
    BoundedPareto dist; // no default: every config names its distribution
    int batches = 32;
};

struct SimResult {
    double mean_wait = 0.0;
    double ci_halfwidth = 0.0; // 95%, batch means (across replications when pooled)
    double station1_mean_wait = 0.0;
    double station2_mean_wait = 0.0;
    double overflow_fraction = 0.0;
    long jobs_measured = 0;

    // diagnostics
    double station1_ci_halfwidth = 0.0;
    double station2_ci_halfwidth = 0.0;
    long station1_jobs = 0;
    long station2_jobs = 0;
    double mean_size = 0.0;
    double analytic_load1 = 0.0;
    double analytic_load2 = 0.0;
    bool diverged = false; // some station runs at load >= 1; estimates don't converge
    int replications = 1;
};

// Poisson arrivals, sizes drawn once per job via the quantile transform, both
// policies reduced to per-queue Lindley recursions (the topology is
// feed-forward, queue 1 hands off to queue 2 in departure order). Waiting
// time is sojourn minus total service received. Deterministic given the
// config. Unstable configs still run; they come back flagged `diverged`.
SimResult simulate(const SimConfig& config);

// Independent replications with seeds derived from config.seed; pooled mean
// and across-replication Student-t CI. replications == 1 is simulate() as-is.
SimResult replicate(const SimConfig& config, int replications);

// Two-sided Student-t critical value, e.g. (0.95, 31) for a 95% CI from 32
// batches. Exposed for tests.
double student_t_critical(double two_sided_level, int df);

} // namespace sbr
