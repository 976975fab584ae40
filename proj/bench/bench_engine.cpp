// Serial reference vs OpenMP engine on identical workloads.
#include <benchmark/benchmark.h>

#include "ilfb/montecarlo.hpp"

namespace {

ilfb::SystemParams params_for(int t) {
    ilfb::SystemParams p;
    p.t = t;
    p.alpha = 1.0;
    return p;
}

void run(benchmark::State& state, bool parallel, ilfb::SchemeId id, ilfb::QuantizerMode mode) {
    const auto p = params_for(static_cast<int>(state.range(0)));
    const std::uint64_t trials = static_cast<std::uint64_t>(state.range(1));
    const ilfb::SchemeSpec spec{id, mode};
    std::optional<ilfb::HuffmanCode> code;
    if (mode == ilfb::QuantizerMode::variable) {
        auto q = p;
        q.trials = trials;
        code = ilfb::build_resolution_code(q, parallel);
    }
    const ilfb::HuffmanCode* c = code ? &*code : nullptr;
    for (auto _ : state) {
        auto acc = parallel ? ilfb::accumulate(spec, p, trials, 7, c) : ilfb::accumulate_serial(spec, p, trials, 7, c);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials));
}

void BM_Serial(benchmark::State& state, ilfb::SchemeId id, ilfb::QuantizerMode mode) { run(state, false, id, mode); }
void BM_OpenMP(benchmark::State& state, ilfb::SchemeId id, ilfb::QuantizerMode mode) { run(state, true, id, mode); }

void Args(benchmark::internal::Benchmark* b) {
    for (int t : {4, 30}) b->Args({t, 1 << 16});
    b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK_CAPTURE(BM_Serial, B_serial, ilfb::SchemeId::B, ilfb::QuantizerMode::fixed)->Apply(Args);
BENCHMARK_CAPTURE(BM_OpenMP, B_openmp, ilfb::SchemeId::B, ilfb::QuantizerMode::fixed)->Apply(Args);
BENCHMARK_CAPTURE(BM_Serial, D_serial, ilfb::SchemeId::D, ilfb::QuantizerMode::fixed)->Apply(Args);
BENCHMARK_CAPTURE(BM_OpenMP, D_openmp, ilfb::SchemeId::D, ilfb::QuantizerMode::fixed)->Apply(Args);
BENCHMARK_CAPTURE(BM_Serial, Dvar_serial, ilfb::SchemeId::D, ilfb::QuantizerMode::variable)
    ->Apply(Args);
BENCHMARK_CAPTURE(BM_OpenMP, Dvar_openmp, ilfb::SchemeId::D, ilfb::QuantizerMode::variable)
    ->Apply(Args);

BENCHMARK_MAIN();
