#include <benchmark/benchmark.h>

#include "mimosim/phy.hpp"

using namespace mimosim;

static void CscgMatrix(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    RngStream rng(1, StreamId{0, 0, 0});
    for (auto _ : state) {
        auto m = sample_cscg_matrix(n, n, 0.7071, rng);
        benchmark::DoNotOptimize(m);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(CscgMatrix)->Arg(4)->Arg(16)->Arg(64);

static void GramProduct(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    RngStream rng(2, StreamId{0, 0, 0});
    const ComplexMatrix h = sample_cscg_matrix(n, n, 0.7071, rng);
    for (auto _ : state) {
        auto g = hermitian_product(h);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(GramProduct)->Arg(4)->Arg(16)->Arg(64);

static void TransmitBlock(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SystemConfig cfg;
    cfg.n_t = n;
    cfg.n_r = n;
    cfg.sigma_w_sq = 1.0;
    RngStream rng(3, StreamId{0, 0, 0});
    RngStream srng(4, StreamId{0, 0, 0});
    CVec s(static_cast<std::size_t>(n));
    for (auto& v : s) v = cplx{srng.bit() ? -1.0 : 1.0, srng.bit() ? -1.0 : 1.0};
    for (auto _ : state) {
        auto rx = transmit_block(s, cfg, rng);
        benchmark::DoNotOptimize(rx);
    }
}
BENCHMARK(TransmitBlock)->Arg(1)->Arg(16)->Arg(32);
