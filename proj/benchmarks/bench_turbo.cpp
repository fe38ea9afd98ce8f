#include <benchmark/benchmark.h>

#include <vector>

#include "mimosim/rng.hpp"
#include "mimosim/turbo.hpp"

using namespace mimosim;

namespace {

std::vector<std::uint8_t> bits(std::size_t n) {
    RngStream rng(5, StreamId{0, StreamId::kDataBits, 0});
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = rng.bit();
    return out;
}

}  // namespace

static void TurboEncode(benchmark::State& state) {
    TurboSpec spec;
    spec.data_length = 1008;
    const InterleaverPerm perm(spec.data_length, 1);
    const auto data = bits(spec.data_length);
    for (auto _ : state) {
        auto pairs = turbo_encode(data, spec, perm);
        benchmark::DoNotOptimize(pairs);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.data_length));
}
BENCHMARK(TurboEncode);

static void TurboDecode(benchmark::State& state) {
    TurboSpec spec;
    spec.data_length = 1008;
    spec.num_iterations = static_cast<int>(state.range(0));
    const InterleaverPerm perm(spec.data_length, 1);
    const auto data = bits(spec.data_length);
    const auto pairs = turbo_encode(data, spec, perm);

    // Mid-waterfall LLR quality keeps the decoder honestly busy.
    RngStream noise(6, StreamId{0, 0, 0});
    const double var = 1.8;
    std::vector<LlrPair> llrs(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double yi = (pairs[i].in_phase ? -1.0 : 1.0) + std::sqrt(var) * noise.gaussian();
        const double yq = (pairs[i].quadrature ? -1.0 : 1.0) + std::sqrt(var) * noise.gaussian();
        llrs[i] = LlrPair{2.0 * yi / var, 2.0 * yq / var};
    }
    for (auto _ : state) {
        auto decoded = turbo_decode(llrs, spec, perm);
        benchmark::DoNotOptimize(decoded);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.data_length));
}
BENCHMARK(TurboDecode)->Arg(1)->Arg(4)->Arg(8);
