#include <sbr/sweep.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <sbr/bounded_pareto.hpp>
#include <sbr/bounds.hpp>
#include <sbr/rng.hpp>
#include <sbr/simulator.hpp>
#include <sbr/sita.hpp>
#include <sbr/tags.hpp>

namespace sbr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void validate(const SweepSpec& spec) {
    if (spec.alpha_values.empty() || spec.lambda_values.empty())
        throw std::invalid_argument("sweep: alpha and lambda lists must be non-empty");
    for (double a : spec.alpha_values)
        if (a == 0.0 || !std::isfinite(a))
            throw std::invalid_argument("sweep: alpha must be finite and nonzero");
    for (double l : spec.lambda_values)
        if (!(l > 0.0) || !std::isfinite(l))
            throw std::invalid_argument("sweep: lambda must be positive and finite");
    if (spec.mode != SweepMode::Analytic) {
        if (spec.sim_jobs <= 0) throw std::invalid_argument("sweep: sim_jobs must be positive");
        if (spec.sim_replications < 1)
            throw std::invalid_argument("sweep: sim_replications must be >= 1");
    }
}

SweepRow compute_row(const SweepSpec& spec, double alpha, double lambda, double r,
                     std::uint64_t row_seed) {
    SweepRow row;
    row.r = r;
    row.lambda = lambda;
    row.alpha = alpha;
    BoundedPareto dist(alpha, r);

    auto tags = optimal_tags_threshold(dist, lambda);
    row.s_tags = tags.optimal_threshold;
    row.w_tags = tags.optimal_value;
    row.feasible_tags = tags.feasible;

    if (spec.sita_at_tags_threshold) {
        auto ev = evaluate_sita(dist, lambda, tags.optimal_threshold);
        row.s_sita = tags.optimal_threshold;
        row.w_sita = ev.total_wait;
        row.feasible_sita = ev.feasible();
    } else {
        auto sita = optimal_sita_cutoff(dist, lambda);
        row.s_sita = sita.optimal_threshold;
        row.w_sita = sita.optimal_value;
        row.feasible_sita = sita.feasible;
    }
    row.ratio = (row.feasible_tags && row.feasible_sita) ? row.w_tags / row.w_sita : kNaN;

    if (alpha == 1.0 && lambda * r < 1.0) {
        row.ratio_lower_bound = ratio_lower_bound(r);
        row.tags_lower_bound = tags_lower_bound(lambda, r);
        row.sita_upper_bound = sita_upper_bound(lambda, r);
    } else {
        row.ratio_lower_bound = kNaN;
        row.tags_lower_bound = kNaN;
        row.sita_upper_bound = kNaN;
    }

    row.w_tags_sim = row.w_sita_sim = row.ratio_sim = row.w_tags_ci = row.w_sita_ci = kNaN;
    if (spec.mode != SweepMode::Analytic) {
        const long warmup = spec.sim_warmup >= 0 ? spec.sim_warmup : spec.sim_jobs / 10;
        if (row.feasible_tags) {
            SimConfig c{splitmix64_at(row_seed, 0), spec.sim_jobs, warmup, Policy::TAGS,
                        row.s_tags, lambda, dist, spec.sim_batches};
            auto sr = replicate(c, spec.sim_replications);
            row.w_tags_sim = sr.mean_wait;
            row.w_tags_ci = sr.ci_halfwidth;
        }
        if (row.feasible_sita) {
            SimConfig c{splitmix64_at(row_seed, 1), spec.sim_jobs, warmup, Policy::SITA,
                        row.s_sita, lambda, dist, spec.sim_batches};
            auto sr = replicate(c, spec.sim_replications);
            row.w_sita_sim = sr.mean_wait;
            row.w_sita_ci = sr.ci_halfwidth;
        }
        if (std::isfinite(row.w_tags_sim) && std::isfinite(row.w_sita_sim) && row.w_sita_sim > 0.0)
            row.ratio_sim = row.w_tags_sim / row.w_sita_sim;
    }
    return row;
}

std::vector<SweepRow> run_rows(const SweepSpec& spec, bool parallel) {
    validate(spec);
    const auto alphas = sorted_unique(spec.alpha_values);
    const auto lambdas = sorted_unique(spec.lambda_values);
    const auto rs = make_r_grid(spec.r_grid);
    const long na = static_cast<long>(alphas.size());
    const long nl = static_cast<long>(lambdas.size());
    const long nr = static_cast<long>(rs.size());
    const long total = na * nl * nr;

    std::vector<SweepRow> rows(total);
    (void)parallel;
    // flat index so the parallel loop writes each row by position; output is
    // identical regardless of thread count or schedule
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long idx = 0; idx < total; ++idx) {
        const long ia = idx / (nl * nr);
        const long il = (idx / nr) % nl;
        const long ir = idx % nr;
        rows[idx] = compute_row(spec, alphas[ia], lambdas[il], rs[ir],
                                splitmix64_at(spec.seed, static_cast<std::uint64_t>(idx)));
    }
    return rows;
}

void append_cell(std::string& line, double v) {
    if (std::isnan(v)) return; // empty cell
    if (std::isinf(v)) {
        line += v > 0 ? "inf" : "-inf";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    line += buf;
}

std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::vector<double> make_r_grid(const RGrid& grid) {
    if (!(grid.min >= 2.0) || !(grid.max > grid.min) || grid.points < 2)
        throw std::invalid_argument("r grid: need 2 <= min < max and points >= 2");
    std::vector<double> rs(grid.points);
    if (grid.spacing == RSpacing::Log) {
        const double llo = std::log(grid.min), lhi = std::log(grid.max);
        for (int i = 0; i < grid.points; ++i)
            rs[i] = std::exp(llo + (lhi - llo) * i / (grid.points - 1));
    } else {
        for (int i = 0; i < grid.points; ++i)
            rs[i] = grid.min + (grid.max - grid.min) * i / (grid.points - 1);
    }
    rs.front() = grid.min;
    rs.back() = grid.max;
    return rs;
}

std::vector<SweepRow> run_sweep_serial(const SweepSpec& spec) { return run_rows(spec, false); }

std::vector<SweepRow> run_sweep(const SweepSpec& spec) { return run_rows(spec, true); }

void write_csv(const std::vector<SweepRow>& rows, SweepMode mode, std::ostream& out) {
    const bool sim = mode != SweepMode::Analytic;
    out << "r,lambda,alpha,s_tags,s_sita,w_tags,w_sita,ratio,"
           "ratio_lower_bound,tags_lower_bound,sita_upper_bound,feasible_tags,feasible_sita";
    if (sim) out << ",w_tags_sim,w_sita_sim,ratio_sim,w_tags_ci,w_sita_ci";
    out << '\n';
    std::string line;
    for (const auto& row : rows) {
        line.clear();
        const double nums[] = {row.r,     row.lambda, row.alpha,
                               row.s_tags, row.s_sita, row.w_tags,
                               row.w_sita, row.ratio,  row.ratio_lower_bound,
                               row.tags_lower_bound,   row.sita_upper_bound};
        for (double v : nums) {
            append_cell(line, v);
            line += ',';
        }
        line += row.feasible_tags ? '1' : '0';
        line += ',';
        line += row.feasible_sita ? '1' : '0';
        if (sim) {
            const double extra[] = {row.w_tags_sim, row.w_sita_sim, row.ratio_sim,
                                    row.w_tags_ci, row.w_sita_ci};
            for (double v : extra) {
                line += ',';
                append_cell(line, v);
            }
        }
        out << line << '\n';
    }
}

void write_gnuplot_script(const SweepSpec& spec, const std::string& csv_path,
                          std::ostream& out) {
    const auto alphas = sorted_unique(spec.alpha_values);
    const auto lambdas = sorted_unique(spec.lambda_values);
    out << "# mean-wait ratio (kill-restart over size-split) vs r\n"
        << "set datafile separator comma\n"
        << "set logscale x\n"
        << "set xlabel 'r'\n"
        << "set ylabel 'ratio of mean waiting times'\n"
        << "set key top left\n"
        << "plot \\\n";
    bool first = true;
    for (double a : alphas) {
        for (double l : lambdas) {
            if (!first) out << ", \\\n";
            first = false;
            // the filter constants are printed with the same format as the
            // CSV cells, so the parsed doubles compare equal
            out << "  '" << csv_path << "' using 1:($2==" << format_g(l)
                << " && $3==" << format_g(a)
                << " ? $8 : 1/0) with linespoints title 'lambda=" << format_g(l)
                << ", alpha=" << format_g(a) << "'";
        }
    }
    out << '\n';
}

} // namespace sbr
