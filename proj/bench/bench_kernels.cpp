// Parallel kernels against their serial reference versions.
#include <benchmark/benchmark.h>

#include "hasse/descent.hpp"
#include "hasse/localsolve.hpp"
#include "hasse/pepin.hpp"

using namespace hasse;

namespace {

// No point exists, so the whole box is scanned.
const TorsorSpec kNoPoint{2, 0, -34};

void BM_search_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(torsor_point_search(kNoPoint, st.range(0)));
}
void BM_search_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(reference::torsor_point_search(kNoPoint, st.range(0)));
}

void BM_descent_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(full_descent(0, -4 * 73 * 9, st.range(0)));
}
void BM_descent_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(reference::full_descent(0, -4 * 73 * 9, st.range(0)));
}

void BM_els_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(everywhere_locally_solvable({5, 0, -4 * 41 * 41 * 3}));
}
void BM_els_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(reference::everywhere_locally_solvable({5, 0, -4 * 41 * 41 * 3}));
}

void BM_family_parallel(benchmark::State& st) {
    FamilySpec s = FamilySpec::from_raw_form({5, 4, 9});
    for (auto _ : st) benchmark::DoNotOptimize(family_scan(s, st.range(0), 30));
}
void BM_family_serial(benchmark::State& st) {
    FamilySpec s = FamilySpec::from_raw_form({5, 4, 9});
    for (auto _ : st) benchmark::DoNotOptimize(reference::family_scan(s, st.range(0), 30));
}

} // namespace

BENCHMARK(BM_search_parallel)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_search_serial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_descent_parallel)->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_descent_serial)->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_els_parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_els_serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_family_parallel)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_family_serial)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
