#include <benchmark/benchmark.h>

#include "mimosim/montecarlo.hpp"

using namespace mimosim;

static void RunFrame(benchmark::State& state) {
    SimulationPlan plan;
    plan.cfg.n_t = static_cast<int>(state.range(0));
    plan.cfg.n_r = static_cast<int>(state.range(1));
    plan.cfg.n_rt = static_cast<int>(state.range(2));
    plan.master_seed = 7;
    plan.resolve();
    const double sigma_w_sq = snr_to_sigma_w(3.5, plan.cfg);
    std::uint32_t frame = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_frame(plan, frame++, sigma_w_sq));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(plan.turbo.data_length));
}
BENCHMARK(RunFrame)->Args({1, 1, 4})->Args({16, 16, 1})->Args({25, 7, 2});
