#include <sbr/simulator.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <sbr/mg1.hpp>
#include <sbr/rng.hpp>

namespace sbr {

namespace {

// ---- Student-t critical values ------------------------------------------
// Regularized incomplete beta via the standard Lentz continued fraction,
// inverted by bisection. Called once per run, accuracy well beyond what a
// CI needs.

double beta_cont_frac(double a, double b, double x) {
    const double eps = 3e-14, tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                               a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cont_frac(a, b, x) / a;
    return 1.0 - bt * beta_cont_frac(b, a, 1.0 - x) / b;
}

double t_cdf(double t, int df) {
    const double p = 0.5 * reg_inc_beta(0.5 * df, 0.5, df / (df + t * t));
    return t >= 0.0 ? 1.0 - p : p;
}

// ---- batch-means accumulator ---------------------------------------------

struct BatchStats {
    std::vector<double> sum;
    std::vector<long> count;

    explicit BatchStats(int batches) : sum(batches, 0.0), count(batches, 0) {}

    void add(int batch, double value) {
        sum[batch] += value;
        ++count[batch];
    }

    long total_count() const {
        long n = 0;
        for (long c : count) n += c;
        return n;
    }

    double grand_mean() const {
        double s = 0.0;
        long n = 0;
        for (size_t i = 0; i < sum.size(); ++i) { s += sum[i]; n += count[i]; }
        return n > 0 ? s / n : 0.0;
    }

    // 95% half-width from the spread of the per-batch means; batches that
    // received no observations are skipped
    double ci_halfwidth() const {
        std::vector<double> means;
        means.reserve(sum.size());
        for (size_t i = 0; i < sum.size(); ++i)
            if (count[i] > 0) means.push_back(sum[i] / count[i]);
        const int k = static_cast<int>(means.size());
        if (k < 2) return 0.0;
        double m = 0.0;
        for (double v : means) m += v;
        m /= k;
        double ss = 0.0;
        for (double v : means) ss += (v - m) * (v - m);
        const double sd = std::sqrt(ss / (k - 1));
        return student_t_critical(0.95, k - 1) * sd / std::sqrt(static_cast<double>(k));
    }
};

} // namespace

double student_t_critical(double two_sided_level, int df) {
    if (df < 1) throw std::domain_error("student_t_critical: df must be >= 1");
    if (!(two_sided_level > 0.0) || !(two_sided_level < 1.0))
        throw std::domain_error("student_t_critical: level must be in (0, 1)");
    const double target = 0.5 + 0.5 * two_sided_level;
    double lo = 0.0, hi = 2.0;
    while (t_cdf(hi, df) < target) hi *= 2.0;
    for (int i = 0; i < 200 && (hi - lo) > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (t_cdf(mid, df) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

void validate(const SimConfig& c) {
    if (c.num_jobs <= 0 || c.warmup_jobs < 0 || c.num_jobs <= c.warmup_jobs)
        throw std::invalid_argument("SimConfig: need num_jobs > warmup_jobs >= 0");
    if (c.batches < 2) throw std::invalid_argument("SimConfig: need batches >= 2");
    if (!(c.threshold >= 1.0) || !(c.threshold <= c.dist.r()))
        throw std::invalid_argument("SimConfig: threshold outside [1, r]");
    if (!(c.arrival_rate > 0.0) || !std::isfinite(c.arrival_rate))
        throw std::invalid_argument("SimConfig: arrival_rate must be positive and finite");
}

} // namespace

SimResult simulate(const SimConfig& config) {
    validate(config);
    const double s = config.threshold;
    const double lambda = config.arrival_rate;
    const long n = config.num_jobs;
    const long warmup = config.warmup_jobs;
    const long measured = n - warmup;
    const int nb = config.batches;
    const bool tags = config.policy == Policy::TAGS;

    SimResult out;
    out.jobs_measured = measured;

    // stations' offered loads, for the divergence diagnostic
    {
        const double r = config.dist.r();
        const double tail_work = config.dist.partial_moment(1, s, r);
        if (tags) {
            out.analytic_load1 = lambda * (config.dist.partial_moment(1, 1.0, s) +
                                           s * config.dist.partial_moment(0, s, r));
            out.analytic_load2 = lambda * tail_work;
        } else {
            out.analytic_load1 = lambda * config.dist.partial_moment(1, 1.0, s);
            out.analytic_load2 = lambda * tail_work;
        }
        out.diverged = out.analytic_load1 >= 1.0 || out.analytic_load2 >= 1.0;
    }

    BatchStats total(nb), st1(nb), st2(nb);
    long overflow = 0;
    double size_sum = 0.0;

    // busy_until = epoch at which a queue has drained everything that already
    // arrived; the Lindley wait of the next arrival is max(0, busy_until - t)
    double t = 0.0;
    double q1_busy = 0.0, q2_busy = 0.0;
#ifndef NDEBUG
    double q2_last_arrival = 0.0;
#endif

    for (long i = 0; i < n; ++i) {
        t += -std::log1p(-uniform01_at(config.seed, 2 * static_cast<std::uint64_t>(i))) / lambda;
        const double x = config.dist.quantile(uniform01_at(config.seed, 2 * static_cast<std::uint64_t>(i) + 1));

        double wait = 0.0, w1 = 0.0, w2 = 0.0;
        bool to2 = false;

        if (tags) {
            w1 = std::max(0.0, q1_busy - t);
            const double served1 = std::min(x, s);
            q1_busy = t + w1 + served1;
            wait = w1;
            if (x > s) {
                to2 = true;
                const double kill = t + w1 + s; // hand-off epoch; monotone across overflow jobs
#ifndef NDEBUG
                assert(kill >= q2_last_arrival);
                q2_last_arrival = kill;
#endif
                w2 = std::max(0.0, q2_busy - kill);
                q2_busy = kill + w2 + x; // restarted from scratch: full size again
                wait = w1 + s + w2;
            }
        } else { // size split: small jobs to queue 1, large to queue 2
            if (x <= s) {
                w1 = std::max(0.0, q1_busy - t);
                q1_busy = t + w1 + x;
                wait = w1;
            } else {
                to2 = true;
                w2 = std::max(0.0, q2_busy - t);
                q2_busy = t + w2 + x;
                wait = w2;
            }
        }

        if (i < warmup) continue;
        const long mi = i - warmup;
        const int batch = static_cast<int>(std::min<long>(nb - 1, mi * nb / measured));
        total.add(batch, wait);
        if (tags || !to2) st1.add(batch, w1);
        if (to2) st2.add(batch, w2);
        if (to2) ++overflow;
        size_sum += x;
    }

    out.mean_wait = total.grand_mean();
    out.ci_halfwidth = total.ci_halfwidth();
    out.station1_mean_wait = st1.grand_mean();
    out.station1_ci_halfwidth = st1.ci_halfwidth();
    out.station2_mean_wait = st2.grand_mean();
    out.station2_ci_halfwidth = st2.ci_halfwidth();
    out.station1_jobs = st1.total_count();
    out.station2_jobs = st2.total_count();
    out.overflow_fraction = static_cast<double>(overflow) / static_cast<double>(measured);
    out.mean_size = size_sum / static_cast<double>(measured);
    out.replications = 1;
    return out;
}

SimResult replicate(const SimConfig& config, int replications) {
    if (replications < 1) throw std::invalid_argument("replicate: replications must be >= 1");
    if (replications == 1) return simulate(config);
    validate(config);

    std::vector<SimResult> reps(replications);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < replications; ++i) {
        SimConfig c = config;
        c.seed = splitmix64_at(config.seed ^ 0xD1B54A32D192ED03ULL, static_cast<std::uint64_t>(i));
        reps[i] = simulate(c);
    }

    // pool in fixed order so the result is independent of scheduling
    auto pool = [&](auto value_of, auto participates, double* mean_out, double* ci_out) {
        std::vector<double> vals;
        vals.reserve(reps.size());
        for (const auto& r : reps)
            if (participates(r)) vals.push_back(value_of(r));
        const int k = static_cast<int>(vals.size());
        if (k == 0) { *mean_out = 0.0; if (ci_out) *ci_out = 0.0; return; }
        double m = 0.0;
        for (double v : vals) m += v;
        m /= k;
        *mean_out = m;
        if (!ci_out) return;
        if (k < 2) { *ci_out = 0.0; return; }
        double ss = 0.0;
        for (double v : vals) ss += (v - m) * (v - m);
        *ci_out = student_t_critical(0.95, k - 1) * std::sqrt(ss / (k - 1)) /
                  std::sqrt(static_cast<double>(k));
    };

    SimResult out;
    auto always = [](const SimResult&) { return true; };
    pool([](const SimResult& r) { return r.mean_wait; }, always, &out.mean_wait, &out.ci_halfwidth);
    pool([](const SimResult& r) { return r.station1_mean_wait; },
         [](const SimResult& r) { return r.station1_jobs > 0; },
         &out.station1_mean_wait, &out.station1_ci_halfwidth);
    pool([](const SimResult& r) { return r.station2_mean_wait; },
         [](const SimResult& r) { return r.station2_jobs > 0; },
         &out.station2_mean_wait, &out.station2_ci_halfwidth);
    pool([](const SimResult& r) { return r.overflow_fraction; }, always, &out.overflow_fraction, nullptr);
    pool([](const SimResult& r) { return r.mean_size; }, always, &out.mean_size, nullptr);

    for (const auto& r : reps) {
        out.jobs_measured += r.jobs_measured;
        out.station1_jobs += r.station1_jobs;
        out.station2_jobs += r.station2_jobs;
        out.diverged = out.diverged || r.diverged;
    }
    out.analytic_load1 = reps.front().analytic_load1;
    out.analytic_load2 = reps.front().analytic_load2;
    out.replications = replications;
    return out;
}

} // namespace sbr
