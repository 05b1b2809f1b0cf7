#include <benchmark/benchmark.h>

#include <cstdint>

#include "ltrc/calibration.hpp"
#include "ltrc/estimation.hpp"
#include "ltrc/families.hpp"
#include "ltrc/gof.hpp"
#include "ltrc/normal.hpp"
#include "ltrc/simulation.hpp"
#include "ltrc/types.hpp"

namespace {

using namespace ltrc;

const TruncCens kWindow{500.0, 10000.0};

// Window-calibrated parameters at (0.10, 0.85), indexed by Family.
const Params kWindowParams[6] = {
    {1.312475639907500535, 2667.014706490920019},
    {0.8849232835090957217, 1283.183452087253463},
    {7.870867935993923770, 1.292386418230387616},
    {8.693579362900424070, 41006.84900438507903},
    {1.238357761258556340, 3532.878030907946286},
    {0.9649407898002187973, 5149.928243607625634},
};

LtrcSample bench_sample(Family f, std::size_t n) {
    return sample_ltrc(f, kWindowParams[static_cast<int>(f)], kWindow, n, 99);
}

void BM_NormQuantile(benchmark::State& state) {
    double p = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(norm_quantile(p));
        p += 1e-7;
        if (p > 1.0 - 1e-6) p = 1e-6;
    }
}
BENCHMARK(BM_NormQuantile);

void BM_Loglik(benchmark::State& state) {
    Family f = static_cast<Family>(state.range(0));
    std::size_t n = static_cast<std::size_t>(state.range(1));
    LtrcSample s = bench_sample(f, n);
    PreparedSample prep(s);
    const Params& prm = kWindowParams[state.range(0)];
    for (auto _ : state) {
        benchmark::DoNotOptimize(loglik(f, prm, prep));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Loglik)
    ->ArgsProduct({{0, 2, 3, 5}, {1024, 16384}})
    ->ArgNames({"family", "n"});

void BM_FitMle(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    LtrcSample s = bench_sample(Family::fisk, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_mle(Family::fisk, s, 42));
    }
}
BENCHMARK(BM_FitMle)->Arg(1000)->Arg(20000)->ArgName("n")->Unit(benchmark::kMillisecond);

void BM_SampleLtrc(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_ltrc(Family::weibull, kWindowParams[5], kWindow, n, seed++));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SampleLtrc)->Range(1024, 65536)->ArgName("n");

void BM_KsStat(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    LtrcSample s = bench_sample(Family::lognormal, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ks_stat(Family::lognormal, kWindowParams[2], kWindow, s));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_KsStat)->Arg(4096)->ArgName("n");

void BM_AdStat(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    LtrcSample s = bench_sample(Family::lognormal, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ad_stat(Family::lognormal, kWindowParams[2], kWindow, s));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_AdStat)->Arg(4096)->ArgName("n");

void BM_PercentileMatch(benchmark::State& state) {
    Family f = static_cast<Family>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(percentile_match(f, 500.0, 0.10, 10000.0, 0.85));
    }
}
BENCHMARK(BM_PercentileMatch)->DenseRange(0, 5)->ArgName("family");

}  // namespace

BENCHMARK_MAIN();
