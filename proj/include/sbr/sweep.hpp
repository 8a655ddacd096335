#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sbr {

enum class RSpacing { Log, Linear };
enum class SweepMode { Analytic, Simulate, Both };

struct RGrid {
    double min = 10.0;
    double max = 1000.0;
    int points = 60;
    RSpacing spacing = RSpacing::Log;
};

struct SweepSpec {
    std::vector<double> alpha_values;
    std::vector<double> lambda_values;
    RGrid r_grid;
    SweepMode mode = SweepMode::Analytic;
    // Ratio column defaults to each policy at its own best threshold; this
    // instead evaluates the size-split policy at the run-then-kill optimum.
    bool sita_at_tags_threshold = false;
    // simulation knobs, used when mode != Analytic
    std::uint64_t seed = 1;
    long sim_jobs = 1000000;
    long sim_warmup = -1; // -1: 10% of sim_jobs
    int sim_batches = 32;
    int sim_replications = 1;
};

// One (alpha, lambda, r) grid point. NaN marks "not applicable" (bound
// columns outside their hypotheses, ratio with an infeasible policy, sim
// columns in analytic mode); the CSV writer renders NaN as an empty cell.
struct SweepRow {
    double r = 0.0;
    double lambda = 0.0;
    double alpha = 0.0;
    double s_tags = 0.0;
    double s_sita = 0.0;
    double w_tags = 0.0;
    double w_sita = 0.0;
    double ratio = 0.0;
    double ratio_lower_bound = 0.0;
    double tags_lower_bound = 0.0;
    double sita_upper_bound = 0.0;
    bool feasible_tags = false;
    bool feasible_sita = false;
    double w_tags_sim = 0.0;
    double w_sita_sim = 0.0;
    double ratio_sim = 0.0;
    double w_tags_ci = 0.0;
    double w_sita_ci = 0.0;
};

// The r values a grid expands to (log- or linear-spaced, endpoints exact).
std::vector<double> make_r_grid(const RGrid& grid);

// All grid points in (alpha, lambda, r) order, lists sorted and deduplicated
// first. The parallel variant distributes rows across OpenMP threads with
// index-addressed writes; both produce bit-identical rows.
std::vector<SweepRow> run_sweep_serial(const SweepSpec& spec);
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Fixed column order; floats as %.12g, NaN as empty cell, booleans as 1/0.
// Sim columns appended only for Simulate/Both.
void write_csv(const std::vector<SweepRow>& rows, SweepMode mode, std::ostream& out);

// gnuplot script plotting ratio vs r, one series per (alpha, lambda) pair.
void write_gnuplot_script(const SweepSpec& spec, const std::string& csv_path,
                          std::ostream& out);

} // namespace sbr
