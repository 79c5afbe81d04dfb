// serial reference vs OpenMP kernels

#include "gm4/assembly.hpp"
#include "gm4/kernels.hpp"
#include "gm4/manifest.hpp"

#include <benchmark/benchmark.h>

#include <map>

using namespace gm4;

namespace {

const std::vector<Mat2>& box(long bound) {
    static std::map<long, std::vector<Mat2>> cache;
    auto it = cache.find(bound);
    if (it == cache.end()) it = cache.emplace(bound, sl2z_box(bound)).first;
    return it->second;
}

void BM_classify_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(classify_batch_serial(box(st.range(0))));
    st.SetItemsProcessed(st.iterations() * box(st.range(0)).size());
}
void BM_classify_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(classify_batch(box(st.range(0))));
    st.SetItemsProcessed(st.iterations() * box(st.range(0)).size());
}
void BM_psi_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(psi_batch_serial(box(st.range(0))));
    st.SetItemsProcessed(st.iterations() * box(st.range(0)).size());
}
void BM_psi_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(psi_batch(box(st.range(0))));
    st.SetItemsProcessed(st.iterations() * box(st.range(0)).size());
}
void BM_partition_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(conjugacy_partition_serial(box(st.range(0)), Ambient::GL2Z));
}
void BM_partition_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(conjugacy_partition(box(st.range(0)), Ambient::GL2Z));
}

// hard case for the matching search: many same-surface blocks, a fiber change to find
GraphStructure search_pair(GraphStructure& other) {
    GraphStructure gs = load_structure(std::string(GM4_CORPUS_DIR) + "/cycle4.gm");
    auto eps = solve_orientations(gs);
    for (size_t i = 0; i < gs.blocks.size(); ++i) gs.blocks[i].orientation = (*eps)[i];
    other = gs;
    fiber_change(other, "D", Mat2(0L, -1L, 1L, 0L));
    return gs;
}

void BM_compare_serial(benchmark::State& st) {
    GraphStructure b;
    GraphStructure a = search_pair(b);
    for (auto _ : st) benchmark::DoNotOptimize(isomorphic_reduced_serial(a, b, static_cast<int>(st.range(0))));
}
void BM_compare_parallel(benchmark::State& st) {
    GraphStructure b;
    GraphStructure a = search_pair(b);
    for (auto _ : st) benchmark::DoNotOptimize(isomorphic_reduced(a, b, static_cast<int>(st.range(0))));
}

} // namespace

BENCHMARK(BM_classify_serial)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_classify_parallel)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_psi_serial)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_psi_parallel)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_partition_serial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_partition_parallel)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_compare_serial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compare_parallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
