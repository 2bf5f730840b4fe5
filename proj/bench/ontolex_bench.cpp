// Serial reference path against the OpenMP path for each parallel kernel.
// Arg 0 is serial, 1 parallel.

#include <random>

#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "ontolex/gloss_lint.hpp"
#include "ontolex/mapping.hpp"
#include "ontolex/search.hpp"
#include "ontolex/semantics.hpp"
#include "ontolex/taxonomy.hpp"

using namespace ontolex;

namespace {

Execution exec_of(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

const Store& big_store() {
    static const Store s = fixtures::random_store(5000, 1);
    return s;
}

ForeignHierarchy layered_dag(int nodes) {
    std::mt19937_64 rng(2);
    ForeignHierarchy h;
    for (int i = 1; i < nodes; ++i)
        for (int k = 0; k < 3; ++k) h.add_edge("n" + std::to_string(i), "n" + std::to_string(rng() % i));
    return h;
}

WorldModel random_model(const Taxonomy& t) {
    std::mt19937_64 rng(3);
    std::vector<std::string> domain, worlds = {"w1", "w2", "w3", "w4"};
    for (int i = 0; i < 256; ++i) domain.push_back("d" + std::to_string(i));
    WorldModel m(domain, worlds);
    for (auto id : t.nodes()) {
        m.cover(id);
        for (std::size_t w = 0; w < worlds.size(); ++w) {
            IndividualSet bits(domain.size());
            for (std::size_t i = 0; i < domain.size(); ++i) bits[i] = rng() % 8 == 0;
            m.set_extension(id, w, bits);
        }
    }
    return m;
}

void BM_RedundantEdges(benchmark::State& state) {
    const auto h = layered_dag(800);
    for (auto _ : state) benchmark::DoNotOptimize(audit_redundant_edges(h, exec_of(state)));
}

void BM_CheckTaxonomy(benchmark::State& state) {
    const auto t = Taxonomy::from_store(big_store());
    const auto m = random_model(t);
    for (auto _ : state) benchmark::DoNotOptimize(check_taxonomy(m, t, exec_of(state)));
}

void BM_LintStore(benchmark::State& state) {
    const auto& s = big_store();
    const auto t = Taxonomy::from_store(s);
    for (auto _ : state) benchmark::DoNotOptimize(lint_store(s, t, nullptr, {}, exec_of(state)));
}

void BM_BuildIndex(benchmark::State& state) {
    const auto& s = big_store();
    for (auto _ : state) benchmark::DoNotOptimize(build_index(s, NormalizationMode::strict, nullptr, exec_of(state)));
}

void BM_Agreement(benchmark::State& state) {
    const auto f = fixtures::agreement_fixture(20000, 5000, 3000, 2000);
    for (auto _ : state)
        benchmark::DoNotOptimize(agreement_stats(f.a, f.b, f.rules, f.universe, "bench", exec_of(state)));
}

}  // namespace

BENCHMARK(BM_RedundantEdges)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckTaxonomy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LintStore)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildIndex)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Agreement)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
