#include <benchmark/benchmark.h>

#include "elastic/composer.hpp"
#include "elastic/simulator.hpp"
#include "elastic/timeline.hpp"

using namespace elastic;

namespace {

EnvironmentConfig bench_config(int ratio) {
    EnvironmentConfig cfg;
    cfg.num_areas = 4;
    cfg.num_queries = 4;
    cfg.ratio = ratio;
    cfg.query_duration = {20, 40};
    cfg.service_duration = {10, 40};
    cfg.provided_energy = {100, 600};
    cfg.required_energy = {100, 400};
    cfg.tsr = {0.6, 1.0};
    cfg.reliability = {0.1, 1.0};
    cfg.consumer_intensity = {5000, 5000};
    cfg.horizon = 120;
    cfg.seed = 4242;
    return cfg;
}

template <CompositionResult (*Fn)(const ChunkedTimeline&, const EnergyQuery&,
                                  const std::vector<EnergyService>&,
                                  const ComposerConfig&)>
void bench_algo(benchmark::State& state) {
    const auto env = generate_environment(bench_config(static_cast<int>(state.range(0))));
    ComposerConfig cfg;
    cfg.enumeration_cap = 200'000'000;

    struct Input {
        EnergyQuery q;
        ChunkedTimeline tl;
        std::vector<EnergyService> pool;
    };
    std::vector<Input> inputs;
    for (const auto& q : env.queries)
        inputs.push_back({q, chunk_window(select_nearby(env.services, q), q),
                          extension_pool(env.services, q)});

    for (auto _ : state) {
        for (const auto& in : inputs) {
            try {
                benchmark::DoNotOptimize(Fn(in.tl, in.q, in.pool, cfg));
            } catch (const Error&) {
            }
        }
    }
}

}  // namespace

BENCHMARK(bench_algo<&compose_brute>)->Name("brute")->DenseRange(1, 7, 2)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bench_algo<&compose_heuristic>)->Name("heuristic")->DenseRange(1, 7, 2)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bench_algo<&compose_greedy>)->Name("greedy")->DenseRange(1, 7, 2)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
