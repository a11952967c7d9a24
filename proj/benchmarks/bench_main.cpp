#include <benchmark/benchmark.h>

#include "plc/bp_encoder.hpp"
#include "plc/codec.hpp"
#include "plc/harness.hpp"
#include "plc/mathutil.hpp"
#include "plc/oracle.hpp"
#include "plc/rng.hpp"

namespace {

using namespace plc;

void BM_NextGaussian(benchmark::State& state) {
    RngStream rng = RngStream::from_seed(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.next_gaussian());
    }
}
BENCHMARK(BM_NextGaussian);

void BM_XiIntegrals(benchmark::State& state) {
    double delta = -1.5;
    for (auto _ : state) {
        delta += 1e-9;
        benchmark::DoNotOptimize(xi_integrals(+1, delta, 0.2, 0.4, 0.6745, 5.0));
    }
}
BENCHMARK(BM_XiIntegrals);

void BM_BpStep(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t m = 2 * n;
    RngStream rng = RngStream::from_seed(2);
    auto [y, codebook] = gen_instance(0.5, m, n, rng);
    CodecParams params;
    BpState bp = init_state(n, m, 0.1, rng);
    for (auto _ : state) {
        bp = bp_step(bp, y, codebook, params);
        benchmark::DoNotOptimize(bp.q);
    }
    state.SetComplexityN(static_cast<std::int64_t>(m * n));
}
BENCHMARK(BM_BpStep)->Arg(125)->Arg(250)->Arg(500)->Complexity();

void BM_Decode(benchmark::State& state) {
    RngStream rng = RngStream::from_seed(3);
    const std::size_t n = 500;
    const std::size_t m = 1000;
    const Codebook codebook = Codebook::from_seed(rng.next_u64(), m, n);
    std::vector<std::int8_t> symbols(n);
    for (auto& s : symbols) s = rng.next_uniform() <= 0.5 ? 1 : -1;
    const BinarySeq s(std::move(symbols));
    for (auto _ : state) {
        benchmark::DoNotOptimize(decode(s, codebook, 0.6745));
    }
}
BENCHMARK(BM_Decode);

void BM_Exhaustive(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    RngStream rng = RngStream::from_seed(4);
    auto [y, codebook] = gen_instance(0.5, 2 * n, n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(encode_exhaustive(y, codebook, 0.6745));
    }
}
BENCHMARK(BM_Exhaustive)->Arg(10)->Arg(14)->Arg(16);

void BM_PackUnpack(benchmark::State& state) {
    RngStream rng = RngStream::from_seed(5);
    const Codebook codebook = Codebook::from_seed(rng.next_u64(), 100, 1000);
    std::vector<std::int8_t> symbols(1000);
    for (auto& s : symbols) s = rng.next_uniform() <= 0.5 ? 1 : -1;
    const BinarySeq s(std::move(symbols));
    for (auto _ : state) {
        const auto bytes = serialize_blob(pack_blob(s, codebook, 0.6745));
        benchmark::DoNotOptimize(unpack_blob(bytes));
    }
}
BENCHMARK(BM_PackUnpack);

}  // namespace

BENCHMARK_MAIN();
