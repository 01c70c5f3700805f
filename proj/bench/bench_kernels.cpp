// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include "triopoly/bounds.hpp"
#include "triopoly/dynamics.hpp"
#include "triopoly/search.hpp"
#include "triopoly/symbolic.hpp"

using namespace triopoly;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_KCovers(benchmark::State& st) {
    const OrientedBox ob(Box::paper());
    for (auto _ : st) benchmark::DoNotOptimize(build_K_enclosures(Params::paper(), ob, 32, exec_of(st)));
}

void BM_BoundExtremum(benchmark::State& st) {
    BoundOptions opt;
    opt.parallel = st.range(0) != 0;
    const IntervalBox r = Box::paper().as_intervals();
    for (auto _ : st)
        benchmark::DoNotOptimize(bound_extremum(Params::paper(), r, Component::F3, Extremum::Min, 1e-12, opt));
}

void BM_PeriodicWords(benchmark::State& st) {
    const OrientedBox ob(Box::paper());
    for (auto _ : st)
        benchmark::DoNotOptimize(count_periodic_words(Params::paper(), ob, 4, 1e-10, {}, false, exec_of(st)));
}

void BM_Bifurcation(benchmark::State& st) {
    BifurcationOptions opt;
    opt.transient = 500;
    opt.record = 100;
    opt.lyap_steps = 1000;
    opt.exec = exec_of(st);
    for (auto _ : st) benchmark::DoNotOptimize(bifurcation_scan(Params::paper(), 1.0, 20.0, 100, {}, opt));
}

void BM_Search(benchmark::State& st) {
    SearchOptions opt;
    opt.budget = 20000;
    opt.space = SearchSpace::around(Box::paper(), 0.05);
    opt.exec = exec_of(st);
    for (auto _ : st) benchmark::DoNotOptimize(search_boxes(Params::paper(), opt));
}

}  // namespace

BENCHMARK(BM_KCovers)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BoundExtremum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PeriodicWords)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Bifurcation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Search)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
