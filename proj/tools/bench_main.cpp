// Timing harness comparing the serial reference implementations with the
// OpenMP kernels: posterior-predictive path simulation and whole-dataset
// evaluation at several thread counts.

#include "lgt/engine.hpp"
#include "lgt/evaluate.hpp"
#include "lgt/mcmc.hpp"
#include "lgt/model.hpp"
#include "lgt/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <omp.h>

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

lgt::TimeSeries synthetic_series(int index, int n) {
    lgt::LgtParams p;
    p.alpha = 0.3;
    p.beta = 0.2;
    p.lambda = 0.5;
    p.gamma = 1.5;
    p.rho = 0.4;
    p.nu = 8.0;
    p.sigma = 0.8;
    p.tau = 0.3;
    p.xi = 0.2;
    p.b1 = 0.5;
    p.l1 = 30.0;
    lgt::Rng rng(9000 + index);
    lgt::TimeSeries ts;
    ts.id = "B" + std::to_string(index);
    ts.category = "yearly";
    ts.frequency = 1;
    ts.horizon = 6;
    ts.values = lgt::simulate_lgt_series(p, 30.0, n, rng);
    for (double& v : ts.values) v = std::max(v, 1.0);
    return ts;
}

void bench_paths(int max_threads) {
    // One fat simulation workload: many paths over a fixed draw set.
    const auto ts = synthetic_series(0, 40);
    lgt::mcmc::SamplerConfig cfg;
    cfg.n_chains = 2;
    cfg.n_iter = 600;
    cfg.n_burn = 300;
    cfg.thin = 3;
    cfg.seed = 7;
    const auto draws = lgt::mcmc::fit_mwg(ts, lgt::ModelKind::lgt, lgt::PriorConfig{}, cfg);
    const auto states = lgt::engine::final_states(ts.values, draws);

    const int h = 18, n_paths = 400000;
    auto t0 = Clock::now();
    const auto ref = lgt::engine::simulate_paths_serial(draws, states, h, n_paths, 11);
    const double serial = seconds_since(t0);
    std::printf("simulate_paths  serial                %8.3f s\n", serial);

    for (int threads = 1; threads <= max_threads; threads *= 2) {
        t0 = Clock::now();
        const auto par = lgt::engine::simulate_paths(draws, states, h, n_paths, 11, threads);
        const double elapsed = seconds_since(t0);
        const bool identical = par.data == ref.data;
        std::printf("simulate_paths  omp %2d thread(s)      %8.3f s  speedup %5.2fx  %s\n",
                    threads, elapsed, serial / elapsed,
                    identical ? "bit-identical" : "MISMATCH");
    }
}

void bench_evaluate(int max_threads) {
    std::vector<lgt::TimeSeries> dataset;
    for (int i = 0; i < 24; ++i) dataset.push_back(synthetic_series(i, 40));

    lgt::pipeline::PipelineOptions opts;
    opts.backend = lgt::pipeline::Backend::gibbs;
    opts.sampler.n_chains = 2;
    opts.sampler.n_iter = 1500;
    opts.sampler.n_burn = 700;
    opts.sampler.thin = 4;
    opts.n_paths = 2000;
    const auto forecaster = lgt::pipeline::make_forecaster(opts);

    std::string ref_csv;
    double serial = 0.0;
    for (int threads = 1; threads <= max_threads; threads *= 2) {
        lgt::eval::EvalOptions eopts;
        eopts.jobs = threads;
        eopts.seed = 3;
        const auto t0 = Clock::now();
        const auto report = lgt::eval::evaluate_dataset(dataset, forecaster, eopts);
        const double elapsed = seconds_since(t0);
        const std::string csv = lgt::eval::per_series_csv(report);
        if (threads == 1) {
            ref_csv = csv;
            serial = elapsed;
        }
        std::printf("evaluate (24 series, gibbs) %2d thread(s) %8.3f s  speedup %5.2fx  %s\n",
                    threads, elapsed, serial / elapsed,
                    csv == ref_csv ? "output identical" : "OUTPUT MISMATCH");
    }
}

}  // namespace

int main() {
    const int max_threads = omp_get_max_threads();
    std::printf("hardware threads available: %d\n", max_threads);
    bench_paths(max_threads);
    bench_evaluate(max_threads);
    return 0;
}
