// google-benchmark wrappers around the library's merge workloads. The
// divergence scenarios reuse the measurement harness (merge-side wall time
// only), reported here as manual time so setup stays outside the clock.

#include <benchmark/benchmark.h>

#include "movecrdt/bench.hpp"
#include "movecrdt/fuzz.hpp"
#include "movecrdt/materialize.hpp"
#include "movecrdt/naive_engine.hpp"

namespace {

using namespace movecrdt;

Variant variant_arg(std::int64_t i) {
    static constexpr Variant table[] = {Variant::moves_disabled, Variant::naive, Variant::rar,
                                        Variant::rar_batch, Variant::rar_lifecycle};
    return table[i];
}

std::vector<Operation> random_log(std::uint64_t seed, std::size_t total_ops) {
    FuzzConfig cfg;
    cfg.seed = seed;
    cfg.total_ops = total_ops;
    cfg.variant = Variant::naive;
    cfg.op_mix.move_object = 3;
    cfg.op_mix.move_scalar = 2;
    return fuzz_run(cfg).union_ops;
}

void BM_DivergeMoves(benchmark::State& state) {
    Scenario sc;
    sc.n = static_cast<std::size_t>(state.range(0));
    sc.variant = variant_arg(state.range(1));
    sc.seed = 1;
    sc.repeats = 1;
    for (auto _ : state) {
        auto rows = run_diverge_moves(sc);
        state.SetIterationTime(static_cast<double>(rows[0].ns) / 1e9);
    }
    state.SetLabel(to_string(sc.variant));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(sc.n));
}
BENCHMARK(BM_DivergeMoves)
    ->UseManualTime()
    ->ArgNames({"n", "variant"})
    ->ArgsProduct({{10, 100, 1000}, {2, 3, 4}});

void BM_DivergeAdds(benchmark::State& state) {
    Scenario sc;
    sc.n = static_cast<std::size_t>(state.range(0));
    sc.variant = variant_arg(state.range(1));
    sc.seed = 1;
    sc.repeats = 1;
    for (auto _ : state) {
        auto rows = run_diverge_adds(sc);
        state.SetIterationTime(static_cast<double>(rows[0].ns) / 1e9);
    }
    state.SetLabel(to_string(sc.variant));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(sc.n));
}
BENCHMARK(BM_DivergeAdds)
    ->UseManualTime()
    ->ArgNames({"n", "variant"})
    ->ArgsProduct({{100, 1000}, {0, 2, 4}});

void BM_AscendingReplay(benchmark::State& state) {
    auto log = random_log(7, static_cast<std::size_t>(state.range(0)));
    Variant v = variant_arg(state.range(1));
    for (auto _ : state) {
        auto engine = make_engine(v);
        engine->insert_batch(log);
        benchmark::DoNotOptimize(engine->validity());
    }
    state.SetLabel(to_string(v));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(log.size()));
}
BENCHMARK(BM_AscendingReplay)
    ->ArgNames({"ops", "variant"})
    ->ArgsProduct({{100, 400}, {1, 2, 3, 4}});

void BM_Materialize(benchmark::State& state) {
    auto log = random_log(11, static_cast<std::size_t>(state.range(0)));
    NaiveResult oracle = update_validity_naive(log);
    OpSet set;
    for (const Operation& op : log) set.insert(op);
    for (auto _ : state) {
        benchmark::DoNotOptimize(materialize(set, oracle.valid));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(log.size()));
}
BENCHMARK(BM_Materialize)->ArgNames({"ops"})->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
