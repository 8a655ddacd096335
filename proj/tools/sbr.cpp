// Command-line front end for the two-server size-based routing toolkit.
//
//   eval           one policy at a fixed threshold
//   optimize       waiting-time-minimizing threshold for a policy
//   sweep          (alpha, lambda, r) grid -> CSV, optional gnuplot script
//   verify-bounds  closed-form floor/ceiling checks against optimized policies
//   simulate       discrete-event run, JSON to stdout
//
// Exit codes: 0 ok, 2 bad flags or domain, 3 infeasible point, 4 failed check.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <sbr/bounded_pareto.hpp>
#include <sbr/bounds.hpp>
#include <sbr/simulator.hpp>
#include <sbr/sita.hpp>
#include <sbr/sweep.hpp>
#include <sbr/tags.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kUsage = 2;
constexpr int kInfeasible = 3;
constexpr int kBoundFailure = 4;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Relative output paths land under $SBR_OUTPUT_DIR when it is set; absolute
// paths are taken verbatim. Parent directories are created as needed.
fs::path resolve_output(const std::string& given, const char* fallback) {
    fs::path p = given.empty() ? fs::path(fallback) : fs::path(given);
    if (p.is_relative())
        if (const char* dir = std::getenv("SBR_OUTPUT_DIR")) p = fs::path(dir) / p;
    if (!p.parent_path().empty()) fs::create_directories(p.parent_path());
    return p;
}

struct PointArgs {
    std::string policy = "sita";
    double alpha = 1.0;
    double r = 100.0;
    double lambda = 0.005;
    double s = 1.0;
    bool as_json = false;
};

sbr::PolicyEvaluation eval_point(const PointArgs& a) {
    sbr::BoundedPareto dist(a.alpha, a.r);
    return a.policy == "sita" ? sbr::evaluate_sita(dist, a.lambda, a.s)
                              : sbr::evaluate_tags(dist, a.lambda, a.s);
}

json station_json(const sbr::StationEvaluation& st, bool stable) {
    return {{"arrival_rate", st.arrival_rate},
            {"load", st.load},
            {"mean_wait", st.mean_wait},
            {"stable", stable}};
}

int cmd_eval(const PointArgs& a) {
    sbr::PolicyEvaluation ev = eval_point(a);
    if (a.as_json) {
        json j{{"policy", a.policy},
               {"alpha", a.alpha},
               {"r", a.r},
               {"lambda", a.lambda},
               {"threshold", ev.threshold},
               {"station1", station_json(ev.station1, ev.station1_stable)},
               {"station2", station_json(ev.station2, ev.station2_stable)},
               {"fraction_to_station2", ev.fraction_to_2},
               {"total_wait", ev.total_wait},
               {"feasible", ev.feasible()}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "policy " << a.policy << "  alpha " << fmt(a.alpha) << "  r " << fmt(a.r)
                  << "  lambda " << fmt(a.lambda) << "  s " << fmt(ev.threshold) << "\n";
        auto line = [](const char* name, const sbr::StationEvaluation& st, bool stable) {
            std::cout << name << ": arrival rate " << fmt(st.arrival_rate) << ", load "
                      << fmt(st.load) << ", mean wait " << fmt(st.mean_wait)
                      << (stable ? "" : "  [unstable]") << "\n";
        };
        line("station 1", ev.station1, ev.station1_stable);
        line("station 2", ev.station2, ev.station2_stable);
        std::cout << "fraction to station 2: " << fmt(ev.fraction_to_2) << "\n"
                  << "total mean wait: " << fmt(ev.total_wait) << "\n"
                  << "feasible: " << (ev.feasible() ? "yes" : "no") << "\n";
    }
    if (!ev.feasible()) {
        if (!ev.station1_stable)
            std::cerr << "station 1 saturated: load " << fmt(ev.station1.load) << " >= 1\n";
        if (!ev.station2_stable)
            std::cerr << "station 2 saturated: load " << fmt(ev.station2.load) << " >= 1\n";
        return kInfeasible;
    }
    return 0;
}

int cmd_optimize(const PointArgs& a) {
    sbr::BoundedPareto dist(a.alpha, a.r);
    sbr::ThresholdSearchResult res = a.policy == "sita"
                                         ? sbr::optimal_sita_cutoff(dist, a.lambda)
                                         : sbr::optimal_tags_threshold(dist, a.lambda);
    if (a.as_json) {
        json j{{"policy", a.policy},
               {"alpha", a.alpha},
               {"r", a.r},
               {"lambda", a.lambda},
               {"optimal_threshold", res.optimal_threshold},
               {"optimal_value", res.optimal_value},
               {"evaluations", res.evaluations},
               {"feasible", res.feasible}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "policy " << a.policy << "  alpha " << fmt(a.alpha) << "  r " << fmt(a.r)
                  << "  lambda " << fmt(a.lambda) << "\n"
                  << "optimal threshold: " << fmt(res.optimal_threshold) << "\n"
                  << "optimal mean wait: " << fmt(res.optimal_value) << "\n"
                  << "evaluations: " << res.evaluations << "\n";
    }
    if (!res.feasible) {
        std::cerr << "no feasible threshold: a station saturates for every split\n";
        return kInfeasible;
    }
    return 0;
}

struct SweepArgs {
    std::vector<double> alphas{1.0};
    std::vector<double> lambdas{0.005};
    double r_min = 10.0;
    double r_max = 1000.0;
    int r_points = 60;
    std::string spacing = "log";
    std::string mode = "analytic";
    std::string out;
    std::string plot;
    bool sita_at_tags = false;
    bool serial = false;
    std::uint64_t seed = 1;
    long jobs = 1000000;
    long warmup = -1;
    int batches = 32;
    int reps = 1;
};

int cmd_sweep(const SweepArgs& a) {
    sbr::SweepSpec spec;
    spec.alpha_values = a.alphas;
    spec.lambda_values = a.lambdas;
    spec.r_grid = {a.r_min, a.r_max, a.r_points,
                   a.spacing == "log" ? sbr::RSpacing::Log : sbr::RSpacing::Linear};
    spec.mode = a.mode == "analytic"   ? sbr::SweepMode::Analytic
                : a.mode == "simulate" ? sbr::SweepMode::Simulate
                                       : sbr::SweepMode::Both;
    spec.sita_at_tags_threshold = a.sita_at_tags;
    spec.seed = a.seed;
    spec.sim_jobs = a.jobs;
    spec.sim_warmup = a.warmup;
    spec.sim_batches = a.batches;
    spec.sim_replications = a.reps;

    auto rows = a.serial ? sbr::run_sweep_serial(spec) : sbr::run_sweep(spec);

    fs::path csv_path = resolve_output(a.out, "sweep.csv");
    std::ofstream csv(csv_path);
    if (!csv) {
        std::cerr << "cannot write " << csv_path.string() << "\n";
        return kUsage;
    }
    sbr::write_csv(rows, spec.mode, csv);
    std::cout << "wrote " << rows.size() << " rows to " << csv_path.string() << "\n";

    if (!a.plot.empty()) {
        fs::path plot_path = resolve_output(a.plot, "plot.gp");
        std::ofstream gp(plot_path);
        if (!gp) {
            std::cerr << "cannot write " << plot_path.string() << "\n";
            return kUsage;
        }
        // reference the csv by bare name when the script sits next to it
        std::string ref = plot_path.parent_path() == csv_path.parent_path()
                              ? csv_path.filename().string()
                              : csv_path.string();
        sbr::write_gnuplot_script(spec, ref, gp);
        std::cout << "wrote plot script to " << plot_path.string() << "\n";
    }
    return 0;
}

struct VerifyArgs {
    double alpha = 1.0;
    std::vector<double> rs;
    std::vector<double> lambdas;
    double load = -1.0;
    double slack = 0.01;
    std::string out;
};

int cmd_verify(const VerifyArgs& a) {
    if (a.alpha != 1.0) {
        std::cerr << "the closed-form bounds are stated for alpha = 1 only\n";
        return kUsage;
    }
    std::vector<std::pair<double, double>> points;
    for (double r : a.rs) {
        if (a.load >= 0.0) points.emplace_back(r, a.load / r);
        for (double lam : a.lambdas) points.emplace_back(r, lam);
    }
    if (!a.rs.empty() && points.empty()) {
        std::cerr << "give --lambda values or --load to pick arrival rates\n";
        return kUsage;
    }

    fs::path path = resolve_output(a.out, "bounds.csv");
    std::ofstream csv(path);
    if (!csv) {
        std::cerr << "cannot write " << path.string() << "\n";
        return kUsage;
    }
    csv << "r,lambda,tags_lower_bound,computed_tags,floor_holds,sita_upper_bound,"
           "computed_sita,sita_within_slack,ratio_lower_bound,computed_ratio,"
           "ratio_at_least_lower,tags_threshold,sita_cutoff\n";

    int failed = 0;
    for (auto [r, lam] : points) {
        sbr::BoundReport rep = sbr::verify_bounds(sbr::BoundedPareto(1.0, r), lam, a.slack);
        csv << fmt(rep.r) << ',' << fmt(rep.arrival_rate) << ',' << fmt(rep.tags_lower) << ','
            << fmt(rep.computed_tags) << ',' << (rep.all_hold ? 1 : 0) << ','
            << fmt(rep.sita_upper) << ',' << fmt(rep.computed_sita) << ','
            << (rep.sita_within_upper_slack ? 1 : 0) << ',' << fmt(rep.ratio_lower) << ','
            << fmt(rep.computed_ratio) << ',' << (rep.ratio_at_least_lower ? 1 : 0) << ','
            << fmt(rep.tags_threshold) << ',' << fmt(rep.sita_cutoff) << "\n";
        std::cout << "r " << fmt(r) << "  lambda " << fmt(lam) << "  run-then-kill wait "
                  << fmt(rep.computed_tags) << " vs floor " << fmt(rep.tags_lower) << "  -> "
                  << (rep.all_hold ? "holds" : "FAILS") << "\n";
        if (!rep.all_hold) ++failed;
    }
    std::cout << "report written to " << path.string() << "\n";
    if (points.empty()) {
        std::cout << "empty grid; nothing to check\n";
        return 0;
    }
    std::cout << "floor checks passed: " << points.size() - failed << "/" << points.size()
              << (failed == 0 ? "" : " -- FAIL") << "\n";
    return failed == 0 ? 0 : kBoundFailure;
}

struct SimArgs {
    std::string policy = "sita";
    double alpha = 1.0;
    double r = 100.0;
    double lambda = 0.005;
    double s = 1.0;
    long jobs = 1000000;
    long warmup = -1;
    int batches = 32;
    int reps = 1;
    std::uint64_t seed = 1;
    std::string csv;
    bool compare = false;
};

int cmd_simulate(const SimArgs& a) {
    long warmup = a.warmup < 0 ? a.jobs / 10 : a.warmup;
    sbr::SimConfig cfg{.seed = a.seed,
                       .num_jobs = a.jobs,
                       .warmup_jobs = warmup,
                       .policy = a.policy == "sita" ? sbr::Policy::SITA : sbr::Policy::TAGS,
                       .threshold = a.s,
                       .arrival_rate = a.lambda,
                       .dist = sbr::BoundedPareto(a.alpha, a.r),
                       .batches = a.batches};
    sbr::SimResult res = sbr::replicate(cfg, a.reps);

    json j;
    j["config"] = {{"policy", a.policy}, {"alpha", a.alpha}, {"r", a.r},
                   {"lambda", a.lambda}, {"s", a.s},         {"seed", a.seed},
                   {"jobs", a.jobs},     {"warmup", warmup}, {"batches", a.batches},
                   {"replications", a.reps}};
    j["result"] = {{"mean_wait", res.mean_wait},
                   {"ci_halfwidth", res.ci_halfwidth},
                   {"station1_mean_wait", res.station1_mean_wait},
                   {"station2_mean_wait", res.station2_mean_wait},
                   {"station1_ci_halfwidth", res.station1_ci_halfwidth},
                   {"station2_ci_halfwidth", res.station2_ci_halfwidth},
                   {"station1_jobs", res.station1_jobs},
                   {"station2_jobs", res.station2_jobs},
                   {"overflow_fraction", res.overflow_fraction},
                   {"jobs_measured", res.jobs_measured},
                   {"mean_size", res.mean_size},
                   {"analytic_load1", res.analytic_load1},
                   {"analytic_load2", res.analytic_load2},
                   {"diverged", res.diverged},
                   {"replications", res.replications}};
    if (a.compare) {
        sbr::PolicyEvaluation ev = eval_point({a.policy, a.alpha, a.r, a.lambda, a.s});
        double disc = res.ci_halfwidth > 0.0 && ev.feasible()
                          ? std::fabs(res.mean_wait - ev.total_wait) / res.ci_halfwidth
                          : std::numeric_limits<double>::quiet_NaN();
        j["analytic"] = {{"total_wait", ev.total_wait},
                         {"station1_mean_wait", ev.station1.mean_wait},
                         {"station2_mean_wait", ev.station2.mean_wait},
                         {"feasible", ev.feasible()},
                         {"discrepancy_halfwidths", disc}};
    }
    std::cout << j.dump(2) << "\n";

    if (!a.csv.empty()) {
        fs::path path = resolve_output(a.csv, "simulations.csv");
        bool fresh = !fs::exists(path);
        std::ofstream out(path, std::ios::app);
        if (!out) {
            std::cerr << "cannot write " << path.string() << "\n";
            return kUsage;
        }
        if (fresh)
            out << "policy,alpha,r,lambda,s,seed,jobs,replications,mean_wait,ci_halfwidth,"
                   "station1_mean_wait,station2_mean_wait,overflow_fraction,diverged\n";
        out << a.policy << ',' << fmt(a.alpha) << ',' << fmt(a.r) << ',' << fmt(a.lambda) << ','
            << fmt(a.s) << ',' << a.seed << ',' << a.jobs << ',' << a.reps << ','
            << fmt(res.mean_wait) << ',' << fmt(res.ci_halfwidth) << ','
            << fmt(res.station1_mean_wait) << ',' << fmt(res.station2_mean_wait) << ','
            << fmt(res.overflow_fraction) << ',' << (res.diverged ? 1 : 0) << "\n";
    }
    return 0;
}

void add_point_flags(CLI::App* cmd, PointArgs& a, bool with_threshold) {
    cmd->add_option("--policy", a.policy, "sita (size split) or tags (run then kill)")
        ->required()
        ->check(CLI::IsMember({"sita", "tags"}));
    cmd->add_option("--alpha", a.alpha, "job-size shape parameter")->required();
    cmd->add_option("--r", a.r, "upper end of the size support [1, r]")->required();
    cmd->add_option("--lambda", a.lambda, "arrival rate")->required();
    if (with_threshold) cmd->add_option("-s,--s", a.s, "threshold in [1, r]")->required();
    cmd->add_flag("--json", a.as_json, "machine-readable output");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-server size-based routing under bounded-Pareto job sizes"};
    app.require_subcommand(1);
    app.footer("Relative output paths land under $SBR_OUTPUT_DIR when it is set.");
    int rc = 0;

    PointArgs ea;
    CLI::App* eval = app.add_subcommand("eval", "evaluate one policy at a fixed threshold");
    add_point_flags(eval, ea, true);
    eval->callback([&] { rc = cmd_eval(ea); });

    PointArgs oa;
    CLI::App* opt = app.add_subcommand("optimize", "find the best threshold for a policy");
    add_point_flags(opt, oa, false);
    opt->callback([&] { rc = cmd_optimize(oa); });

    SweepArgs sa;
    CLI::App* sweep = app.add_subcommand("sweep", "grid sweep over (alpha, lambda, r) to CSV");
    sweep->add_option("--alpha", sa.alphas, "shape values")->capture_default_str();
    sweep->add_option("--lambda", sa.lambdas, "arrival rates")->capture_default_str();
    sweep->add_option("--r-min", sa.r_min)->capture_default_str()->check(CLI::Range(2.0, 1e18));
    sweep->add_option("--r-max", sa.r_max)->capture_default_str();
    sweep->add_option("--r-points", sa.r_points)->capture_default_str()->check(CLI::Range(2, 1 << 20));
    sweep->add_option("--r-spacing", sa.spacing)->capture_default_str()
        ->check(CLI::IsMember({"log", "linear"}));
    sweep->add_option("--mode", sa.mode, "analytic, simulate, or both")->capture_default_str()
        ->check(CLI::IsMember({"analytic", "simulate", "both"}));
    sweep->add_option("--out", sa.out, "output CSV path (default sweep.csv)");
    sweep->add_option("--plot-script", sa.plot, "also emit a gnuplot script here");
    sweep->add_flag("--sita-at-tags-threshold", sa.sita_at_tags,
                    "evaluate the size split at the run-then-kill optimum");
    sweep->add_flag("--serial", sa.serial, "single-threaded reference path");
    sweep->add_option("--seed", sa.seed)->capture_default_str();
    sweep->add_option("--jobs", sa.jobs, "jobs per simulated point")->capture_default_str();
    sweep->add_option("--warmup", sa.warmup, "warmup jobs (-1: 10% of --jobs)")
        ->capture_default_str();
    sweep->add_option("--batches", sa.batches)->capture_default_str();
    sweep->add_option("--replications", sa.reps)->capture_default_str();
    // config keys live in a [sweep] section; the flag may come before or
    // after the subcommand name (fallthrough sends it up to the app)
    app.set_config("--config", "", "read sweep options from a file");
    sweep->fallthrough();
    sweep->callback([&] { rc = cmd_sweep(sa); });

    VerifyArgs va;
    CLI::App* verify =
        app.add_subcommand("verify-bounds", "closed-form floor/ceiling checks (alpha = 1)");
    verify->add_option("--alpha", va.alpha, "must be 1")->capture_default_str();
    verify->add_option("--r", va.rs, "r values to check");
    verify->add_option("--lambda", va.lambdas, "arrival rates, crossed with every r");
    verify->add_option("--load", va.load, "alternative: lambda = load / r per point");
    verify->add_option("--slack", va.slack, "ceiling comparison slack")->capture_default_str();
    verify->add_option("--out", va.out, "report CSV path (default bounds.csv)");
    verify->callback([&] { rc = cmd_verify(va); });

    SimArgs ma;
    CLI::App* sim = app.add_subcommand("simulate", "discrete-event run of one configuration");
    sim->add_option("--policy", ma.policy)->required()->check(CLI::IsMember({"sita", "tags"}));
    sim->add_option("--alpha", ma.alpha)->required();
    sim->add_option("--r", ma.r)->required();
    sim->add_option("--lambda", ma.lambda)->required();
    sim->add_option("-s,--s", ma.s, "threshold in [1, r]")->required();
    sim->add_option("--jobs", ma.jobs)->capture_default_str();
    sim->add_option("--warmup", ma.warmup, "warmup jobs (-1: 10% of --jobs)")
        ->capture_default_str();
    sim->add_option("--batches", ma.batches)->capture_default_str();
    sim->add_option("--replications", ma.reps)->capture_default_str();
    sim->add_option("--seed", ma.seed)->capture_default_str();
    sim->add_option("--csv", ma.csv, "append a summary row to this CSV");
    sim->add_flag("--compare-analytic", ma.compare,
                  "report the analytic value and the gap in CI half-widths");
    sim->callback([&] { rc = cmd_simulate(ma); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return rc;
}
