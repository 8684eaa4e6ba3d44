#include <benchmark/benchmark.h>

#include "evograph/discriminate.hpp"
#include "evograph/evolve.hpp"
#include "evograph/induce.hpp"
#include "evograph/metrics.hpp"
#include "evograph/rng.hpp"
#include "evograph/ted.hpp"

using namespace evograph;

namespace {

DepTree random_tree(SplitMix64& rng, int nodes) {
    static const std::vector<std::string> labels = {"a", "b", "c", "d", "e"};
    DepTree root{labels[static_cast<size_t>(rng.below(labels.size()))], {}};
    int remaining = nodes - 1;
    while (remaining > 0) {
        int take = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(remaining)));
        root.children.push_back(random_tree(rng, take));
        remaining -= take;
    }
    return root;
}

void BM_TreeEditDistance(benchmark::State& state) {
    SplitMix64 rng(7);
    const int nodes = static_cast<int>(state.range(0));
    DepTree a = random_tree(rng, nodes);
    DepTree b = random_tree(rng, nodes);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tree_edit_distance(a, b));
    }
}
BENCHMARK(BM_TreeEditDistance)->Arg(8)->Arg(16)->Arg(32);

void BM_InduceRelation(benchmark::State& state) {
    std::vector<Relation> path = {Relation::After, Relation::Result, Relation::Result,
                                  Relation::After};
    for (auto _ : state) {
        benchmark::DoNotOptimize(induce_relation(path));
    }
}
BENCHMARK(BM_InduceRelation);

void BM_Bleu2(benchmark::State& state) {
    const std::string pred = "the volunteers assembled the emergency shelter near the river";
    const std::string ref = "volunteers assembled an emergency shelter by the flooded river";
    for (auto _ : state) {
        benchmark::DoNotOptimize(bleu_n(pred, ref, 2));
    }
}
BENCHMARK(BM_Bleu2);

void BM_WordOverlap(benchmark::State& state) {
    const std::string a = "the volunteers assembled the emergency shelter near the river";
    const std::string b = "the crowd gathered at the harvest festival in the town square";
    for (auto _ : state) {
        benchmark::DoNotOptimize(word_overlap(a, b));
    }
}
BENCHMARK(BM_WordOverlap);

void BM_MockEvolveGraph(benchmark::State& state) {
    Event seed;
    seed.id = "bench-seed";
    seed.text = "The river flooded the town.";
    seed.image = "img/bench.png";
    seed.caption = "a flooded main street";
    MockProvider provider;
    EvolveConfig cfg;
    cfg.steps_l = static_cast<int>(state.range(0));
    cfg.rng_seed = 5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_graph(seed, cfg, provider));
    }
}
BENCHMARK(BM_MockEvolveGraph)->Arg(1)->Arg(2)->Arg(3);

} // namespace

BENCHMARK_MAIN();
