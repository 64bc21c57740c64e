// Benchmarks comparing the OpenMP frontier expansion against the serial
// reference, for the subset BFS and the batch experiment runner.

#include <benchmark/benchmark.h>

#include "synkit/codes.hpp"
#include "synkit/experiment.hpp"
#include "synkit/oracle.hpp"

using namespace synkit;

namespace {

void bm_oracle(benchmark::State& state, bool parallel) {
    const Automaton a = gen_cerny(static_cast<std::size_t>(state.range(0)));
    OracleOptions opts;
    opts.parallel = parallel;
    for (auto _ : state) {
        const OracleResult res = exact_reset_threshold(a, opts);
        benchmark::DoNotOptimize(res.threshold);
    }
}

void bm_oracle_random(benchmark::State& state, bool parallel) {
    const Automaton a = gen_random_dfa(static_cast<std::size_t>(state.range(0)), 2, 12345);
    OracleOptions opts;
    opts.parallel = parallel;
    for (auto _ : state) {
        const OracleResult res = exact_reset_threshold(a, opts);
        benchmark::DoNotOptimize(res.synchronizing);
    }
}

void bm_experiment(benchmark::State& state, bool parallel) {
    ExperimentConfig config;
    config.kind = ExperimentKind::RandomDecoderRt;
    config.n_min = 6;
    config.n_max = 10;
    config.samples = 30;
    config.seed = 7;
    config.parallel = parallel;
    for (auto _ : state) {
        const auto rows = run_experiment(config);
        benchmark::DoNotOptimize(rows.size());
    }
}

} // namespace

// the cycle family drives the widest subset frontiers; random instances
// synchronize quickly and exercise the small-workload path
BENCHMARK_CAPTURE(bm_oracle, serial, false)->Arg(18)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_oracle, parallel, true)->Arg(18)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_oracle_random, serial, false)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_oracle_random, parallel, true)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_experiment, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_experiment, parallel, true)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
