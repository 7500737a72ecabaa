#include <benchmark/benchmark.h>

#include "progblock/block_building.hpp"
#include "progblock/comparison_cleaning.hpp"
#include "progblock/er_engine.hpp"
#include "progblock/pipeline.hpp"
#include "progblock/scoring.hpp"
#include "progblock/synthgen.hpp"
#include "progblock/util.hpp"

using namespace progblock;

namespace {

RecordSet synthetic_records(std::int32_t n, int tokens_per_record, int alphabet,
                            std::uint64_t seed) {
    SplitMix rng(seed);
    std::vector<Record> records(n);
    for (std::int32_t i = 0; i < n; ++i) {
        std::string text;
        for (int t = 0; t < tokens_per_record; ++t) {
            if (t) text += ' ';
            text += "tok" + std::to_string(rng.next_below(alphabet));
        }
        records[i].id = i;
        records[i].attributes = {{"text", std::move(text)}};
    }
    return RecordSet::from_records(std::move(records));
}

NoisyInstance bench_instance(std::int32_t n) {
    NoisyInstanceParams p;
    p.n = n;
    p.cluster_size = 20;
    p.dirty_blocks = n / 2;
    p.dirty_block_size = 6;
    p.seed = 99;
    return generate_noisy_instance(p);
}

}  // namespace

static void BM_StandardBlocking(benchmark::State& state) {
    auto rs = synthetic_records(static_cast<std::int32_t>(state.range(0)), 10,
                                static_cast<int>(state.range(0)) / 4, 1);
    for (auto _ : state) {
        auto blocks = standard_blocking(rs);
        benchmark::DoNotOptimize(blocks.blocks.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StandardBlocking)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();

static void BM_SortedNeighborhood(benchmark::State& state) {
    auto rs = synthetic_records(static_cast<std::int32_t>(state.range(0)), 10,
                                static_cast<int>(state.range(0)) / 4, 2);
    for (auto _ : state) {
        auto blocks = sorted_neighborhood(rs, 3);
        benchmark::DoNotOptimize(blocks.blocks.data());
    }
}
BENCHMARK(BM_SortedNeighborhood)->Arg(1 << 12);

static void BM_HierarchyBuild(benchmark::State& state) {
    auto rs = synthetic_records(static_cast<std::int32_t>(state.range(0)), 8,
                                static_cast<int>(state.range(0)) / 8, 3);
    auto base = standard_blocking(rs);
    for (auto _ : state) {
        auto h = BlockHierarchy::build(base, rs.n(), 10, 20);
        benchmark::DoNotOptimize(h.size());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HierarchyBuild)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();

static void BM_ScoreBlocksRound(benchmark::State& state) {
    auto inst = bench_instance(static_cast<std::int32_t>(state.range(0)));
    auto h = BlockHierarchy::build(inst.blocks, inst.records.n(), 10, 20);
    SimilarityStore sim(inst.records.n(), inst.prior_fn());
    PipelineConfig cfg;
    for (auto _ : state) {
        ScoreSet scores;
        score_blocks(h, sim, cfg, inst.records.n(), 1, scores);
        score_blocks(h, sim, cfg, inst.records.n(), 2, scores);
        benchmark::DoNotOptimize(scores.value.data());
    }
}
BENCHMARK(BM_ScoreBlocksRound)->Arg(2000)->Arg(8000);

static void BM_EnumerateAndMetaBlock(benchmark::State& state) {
    auto inst = bench_instance(static_cast<std::int32_t>(state.range(0)));
    auto h = BlockHierarchy::build(inst.blocks, inst.records.n(), 10, 20);
    SimilarityStore sim(inst.records.n(), inst.prior_fn());
    PipelineConfig cfg;
    ScoreSet scores;
    score_blocks(h, sim, cfg, inst.records.n(), 1, scores);
    std::int64_t budget = effective_pair_budget(cfg, inst.records.n());
    for (auto _ : state) {
        auto en = enumerate_candidates(h, scores.value, budget);
        auto g = meta_block(en.pairs, sim, h, scores.value, cfg.top_k_per_record,
                            inst.records.n());
        benchmark::DoNotOptimize(g.edge_count());
    }
}
BENCHMARK(BM_EnumerateAndMetaBlock)->Arg(2000)->Arg(8000);

static void BM_FullPipeline(benchmark::State& state) {
    auto inst = bench_instance(static_cast<std::int32_t>(state.range(0)));
    PipelineConfig cfg;
    cfg.phi = 0.1;
    cfg.pair_budget_m = 10 * static_cast<std::int64_t>(state.range(0));
    for (auto _ : state) {
        auto result = run_progressive_blocking(inst.records, inst.truth, cfg, inst.blocks,
                                               inst.prior_fn());
        benchmark::DoNotOptimize(result.graph.edge_count());
    }
}
BENCHMARK(BM_FullPipeline)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
