#include "bianchi/homology.hpp"
#include "bianchi/poincare.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace bianchi;

namespace {

// Range arguments are |D|; the mode is the second argument (0 psl, 1 pgl).
GroupMode mode_of(benchmark::State const& s) { return s.range(1) ? GroupMode::PGL : GroupMode::PSL; }

void BM_FordDomain(benchmark::State& state)
{
    Order O = Order::make(-state.range(0));
    FordOptions fo;
    fo.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(ford_domain(O, mode_of(state), fo));
}
BENCHMARK(BM_FordDomain)->ArgsProduct({{4, 23, 71, 95}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_BuildPresentation(benchmark::State& state)
{
    FordDomain ford = ford_domain(Order::make(-state.range(0)), mode_of(state));
    for (auto _ : state) benchmark::DoNotOptimize(build_presentation(ford));
}
BENCHMARK(BM_BuildPresentation)->ArgsProduct({{4, 23, 71, 95}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_TorsionFreeH1(benchmark::State& state)
{
    Presentation p = build_presentation(ford_domain(Order::make(-state.range(0)), GroupMode::PGL)).presentation;
    for (auto _ : state) benchmark::DoNotOptimize(torsion_free_h1(p));
}
BENCHMARK(BM_TorsionFreeH1)->Arg(23)->Arg(71)->Arg(88)->Unit(benchmark::kMillisecond);

void BM_SmithNormalForm(benchmark::State& state)
{
    auto n = static_cast<size_t>(state.range(0));
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> entry(-3, 3);
    IntMatrix A(n, n + 4);
    for (size_t i = 0; i < A.rows(); ++i) {
        for (size_t j = 0; j < A.cols(); ++j) A(i, j) = entry(rng);
    }
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(A));
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
