// Timing harness: the OpenMP row/replication kernels against the serial
// reference paths. Single-core hosts will show ~1x; that's the honest number.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <sbr/simulator.hpp>
#include <sbr/sweep.hpp>

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        if (dt.count() < best) best = dt.count();
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    int repeats = argc > 1 ? std::atoi(argv[1]) : 2;
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads available: %d\n", threads);

    sbr::SweepSpec spec;
    spec.alpha_values = {0.7, 1.0, 1.5};
    spec.lambda_values = {0.005, 0.01, 0.05};
    spec.r_grid = {10.0, 1000.0, 60, sbr::RSpacing::Log};

    volatile double sink = 0.0; // keep the work observable
    double serial = best_of(repeats, [&] { sink = sink + sbr::run_sweep_serial(spec)[0].w_tags; });
    double parallel = best_of(repeats, [&] { sink = sink + sbr::run_sweep(spec)[0].w_tags; });
    std::printf("sweep %zux%zux%d analytic rows: serial %.3fs  parallel %.3fs  speedup %.2fx\n",
                spec.alpha_values.size(), spec.lambda_values.size(), spec.r_grid.points, serial,
                parallel, serial / parallel);

    sbr::SimConfig cfg{.seed = 42,
                       .num_jobs = 200000,
                       .warmup_jobs = 20000,
                       .policy = sbr::Policy::TAGS,
                       .threshold = 8.0,
                       .arrival_rate = 0.02,
                       .dist = sbr::BoundedPareto(1.0, 100.0),
                       .batches = 32};
    const int reps = 4;
#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    double rep_serial = best_of(repeats, [&] { sink = sink + sbr::replicate(cfg, reps).mean_wait; });
#ifdef _OPENMP
    omp_set_num_threads(threads);
#endif
    double rep_parallel =
        best_of(repeats, [&] { sink = sink + sbr::replicate(cfg, reps).mean_wait; });
    std::printf("replicated sim %dx%ld jobs: 1 thread %.3fs  %d threads %.3fs  speedup %.2fx\n",
                reps, cfg.num_jobs, rep_serial, threads, rep_parallel, rep_serial / rep_parallel);
    return 0;
}
