#include <benchmark/benchmark.h>

#include "bloxorz/ncl.hpp"
#include "bloxorz/reduction.hpp"
#include "bloxorz/solver.hpp"

using namespace blox;

static void BM_BfsQuadratic(benchmark::State& st) {
    Level lv = gen_quadratic(static_cast<int>(st.range(0)));
    uint64_t explored = 0;
    for (auto _ : st) {
        auto r = bfs_solve(lv);
        explored = r.explored;
        benchmark::DoNotOptimize(r);
    }
    st.counters["states"] = static_cast<double>(explored);
    st.counters["states/s"] = benchmark::Counter(static_cast<double>(explored), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_BfsQuadratic)->DenseRange(2, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_ClosureQuadratic(benchmark::State& st) {
    Level lv = gen_quadratic(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(cube_closure_solve(lv));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_ClosureQuadratic)->RangeMultiplier(2)->Range(2, 32)->Complexity()->Unit(benchmark::kMillisecond);

static void BM_CompileNcl(benchmark::State& st) {
    ncl::Graph g = ncl::or_or_graph();
    ncl::Configuration c{false, true, true};
    for (auto _ : st) benchmark::DoNotOptimize(compile_ncl(g, c, InitMode::AllClosed));
}
BENCHMARK(BM_CompileNcl);

static void BM_VerifyReductionOrOr(benchmark::State& st) {
    ncl::Graph g = ncl::or_or_graph();
    ncl::Configuration c{false, true, true};
    for (auto _ : st) benchmark::DoNotOptimize(verify_reduction(g, c, InitMode::Free));
}
BENCHMARK(BM_VerifyReductionOrOr)->Unit(benchmark::kMillisecond);

static void BM_SatCompileAndSolve(benchmark::State& st) {
    CnfFormula f{3, {{1, -2, 3}, {-1, 2}, {2, -3}, {-1, -2, -3}}};
    for (auto _ : st) benchmark::DoNotOptimize(bfs_solve(compile_sat(f).level));
}
BENCHMARK(BM_SatCompileAndSolve)->Unit(benchmark::kMillisecond);

static void BM_OrGadgetCheck(benchmark::State& st) {
    GadgetTemplate t = or_vertex_gadget();
    GadgetContract c = or_contract();
    for (auto _ : st) benchmark::DoNotOptimize(verify_gadget(t, c));
}
BENCHMARK(BM_OrGadgetCheck)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
