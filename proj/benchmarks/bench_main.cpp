#include "pairy/costs.hpp"
#include "pairy/moments.hpp"
#include "pairy/oracle.hpp"
#include "pairy/refdist.hpp"
#include "pairy/sampler.hpp"

#include <benchmark/benchmark.h>

using namespace pairy;

static void BM_MuRecursion(benchmark::State& st) {
    PrecisionScope ps(256);
    const int s = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(mu_excursion(Real(0.75), s));
}
BENCHMARK(BM_MuRecursion)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);

static void BM_TakacsExact(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(mu_excursion_exact(1, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_TakacsExact)->Arg(30)->Unit(benchmark::kMicrosecond);

static void BM_DpDouble(benchmark::State& st) {
    const int N = static_cast<int>(st.range(0));
    std::vector<double> w(N);
    for (int k = 0; k < N; ++k) w[k] = k + 1.0;
    for (auto _ : st) benchmark::DoNotOptimize(exact_moment_dp_double(Ensemble::excursion, w, N, 4));
    st.SetComplexityN(N);
}
BENCHMARK(BM_DpDouble)->RangeMultiplier(2)->Range(256, 2048)->Complexity()->Unit(benchmark::kMillisecond);

static void BM_DpReal(benchmark::State& st) {
    PrecisionScope ps(128);
    auto cf = CostFunction::gamma_ratio(Real(0.5), Real(0.75));
    const int N = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(exact_moment_dp(Ensemble::excursion, cf, Scalar(Real(0)), N, 4));
}
BENCHMARK(BM_DpReal)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_DpRational(benchmark::State& st) {
    auto cf = CostFunction::power_one(Rat(2));
    for (auto _ : st)
        benchmark::DoNotOptimize(exact_moment_dp(Ensemble::bridge, cf, Scalar(Rat(0)), static_cast<int>(st.range(0)), 4));
}
BENCHMARK(BM_DpRational)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_SampleExcursion(benchmark::State& st) {
    Xoshiro256ss rng(1);
    Steps steps;
    std::vector<int> scratch, sl, stack;
    const int N = static_cast<int>(st.range(0));
    for (auto _ : st) {
        sample_excursion_into(N, rng, steps, scratch);
        slice_semilengths_into(steps, sl, stack);
        benchmark::DoNotOptimize(sl.data());
    }
    st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_SampleExcursion)->Arg(100)->Arg(2000);

static void BM_AlphaNumeric(benchmark::State& st) {
    PrecisionScope ps(128);
    auto cf = CostFunction::power_half(Real(1.3));
    for (auto _ : st) benchmark::DoNotOptimize(alpha_numeric(cf, Real("1e-15")));
}
BENCHMARK(BM_AlphaNumeric)->Unit(benchmark::kMillisecond);

static void BM_AlphaClosed(benchmark::State& st) {
    auto cf = CostFunction::gamma_ratio(Real(0.75), Real(1.3));
    for (auto _ : st) benchmark::DoNotOptimize(alpha_closed_form(cf));
}
BENCHMARK(BM_AlphaClosed)->Unit(benchmark::kMicrosecond);

static void BM_AiryDensity(benchmark::State& st) {
    const double x = static_cast<double>(st.range(0)) / 10.0;
    for (auto _ : st) benchmark::DoNotOptimize(airy_density_d(x));
}
BENCHMARK(BM_AiryDensity)->Arg(3)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
