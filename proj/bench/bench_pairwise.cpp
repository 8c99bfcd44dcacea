// Serial reference against the OpenMP kernels on the pairwise scans.

#include "treechain/family.hpp"
#include "treechain/geometry.hpp"

#include <benchmark/benchmark.h>

#include <map>

using namespace treechain;

namespace {

struct Fixture {
    CoverSystem system;
    RealizedSystem realized;
    EnlargedFamily enlarged;
};

const Fixture& fixture(int l)
{
    static std::map<int, Fixture> cache;
    auto it = cache.find(l);
    if (it == cache.end()) {
        auto s = build_cover_system(lift_diagram_3(family::build_family_diagram(l + 1)), EpsilonSchedule::standard(l));
        auto r = realize_system(s);
        auto e = enlarge_taut_family(s, r);
        it = cache.emplace(l, Fixture{std::move(s), std::move(r), std::move(e)}).first;
    }
    return it->second;
}

Exec mode(const benchmark::State& state)
{
    return state.range(1) == 0 ? Exec::Serial : Exec::Parallel;
}

void BM_OracleIdentity(benchmark::State& state)
{
    const auto& f = fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_oracle_identity(f.system, f.realized, mode(state)));
}

void BM_EnlargementDisjoint(benchmark::State& state)
{
    const auto& f = fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_enlargement_disjoint(f.realized.regions, f.enlarged, mode(state)));
}

void BM_Enlarge(benchmark::State& state)
{
    const auto& f = fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(enlarge_taut_family(f.system, f.realized, mode(state)));
}

void BM_D3(benchmark::State& state)
{
    const auto& f = fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_D3(f.system, mode(state)));
}

void args(benchmark::internal::Benchmark* b)
{
    for (int l : {4, 6, 8})
        for (int parallel : {0, 1}) b->Args({l, parallel});
    b->ArgNames({"l", "parallel"})->Unit(benchmark::kMillisecond);
}

} // namespace

BENCHMARK(BM_OracleIdentity)->Apply(args);
BENCHMARK(BM_EnlargementDisjoint)->Apply(args);
BENCHMARK(BM_Enlarge)->Apply(args);
BENCHMARK(BM_D3)->Apply(args);

BENCHMARK_MAIN();
