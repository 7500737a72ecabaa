#include "doctest.h"
#include "progblock/block_building.hpp"
#include "progblock/comparison_cleaning.hpp"
#include "progblock/evaluation.hpp"
#include "progblock/pipeline.hpp"
#include "progblock/synthgen.hpp"
#include "test_support.hpp"

using namespace progblock;
using namespace progblock::testing;

TEST_CASE("converged compares edge sets and ignores weights") {
    auto a = BlockingGraph::from_edges({{0, 1, 0.5}, {1, 2, 0.2}}, 3);
    auto b = BlockingGraph::from_edges({{1, 2, 0.9}, {0, 1, 0.1}}, 3);
    CHECK(converged(a, b));
    auto c = BlockingGraph::from_edges({{0, 1, 0.5}, {1, 2, 0.2}, {0, 2, 0.1}}, 3);
    CHECK(!converged(a, c));
    CHECK(!converged(c, a));
}

TEST_CASE("phi=1 runs a single blocking pass identical to composing the stages") {
    auto rs = cars_fixture();
    auto gt = cars_truth();
    PipelineConfig cfg;
    cfg.phi = 1.0;
    cfg.seed = 11;

    auto result = run_progressive_blocking(rs, gt, cfg);
    CHECK(result.rounds == 1);
    CHECK(result.trace.size() == 1);
    CHECK(result.state.queries_spent == 0);  // feedback switched off

    // manual composition of the same stages
    auto base = build_base_blocks(rs, cfg);
    auto h = BlockHierarchy::build(base, rs.n(), cfg.hierarchy_depth_d, cfg.max_blocks_per_record);
    SimilarityStore sim(&rs);
    ScoreSet scores;
    score_blocks(h, sim, cfg, rs.n(), 1, scores);
    auto en = enumerate_candidates(h, scores.value, effective_pair_budget(cfg, rs.n()));
    auto manual = meta_block(en.pairs, sim, h, scores.value, cfg.top_k_per_record, rs.n());

    REQUIRE(result.graph.edge_count() == manual.edge_count());
    CHECK(result.graph.same_edge_set(manual));
    for (std::int64_t i = 0; i < manual.edge_count(); ++i) {
        CHECK(result.graph.edges()[i].u == manual.edges()[i].u);
        CHECK(result.graph.edges()[i].v == manual.edges()[i].v);
        CHECK(result.graph.edges()[i].weight == manual.edges()[i].weight);
    }
}

TEST_CASE("a stable graph terminates the loop by convergence") {
    // two identical records: one block, one pair; the graph cannot change
    std::vector<Record> recs(2);
    recs[0].id = 0;
    recs[0].attributes = {{"t", "alpha beta"}};
    recs[1].id = 1;
    recs[1].attributes = {{"t", "alpha beta"}};
    auto rs = RecordSet::from_records(std::move(recs));
    auto gt = GroundTruth::from_labels({0, 0});

    PipelineConfig cfg;
    cfg.phi = 0.25;  // would allow 4 rounds
    auto result = run_progressive_blocking(rs, gt, cfg);
    CHECK(result.converged);
    CHECK(result.rounds == 2);
    CHECK(result.graph.edge_count() == 1);
    CHECK(result.trace.back().pair_recall == 1.0);
}

TEST_CASE("round count is bounded by ceil(1/phi)") {
    auto inst = generate_noisy_instance({.n = 200,
                                         .cluster_size = 10,
                                         .dirty_blocks = 100,
                                         .dirty_block_size = 5,
                                         .seed = 4});
    PipelineConfig cfg;
    cfg.phi = 0.34;  // ceil(1/phi) = 3
    cfg.pair_budget_m = 400;
    cfg.seed = 21;
    auto result = run_progressive_blocking(inst.records, inst.truth, cfg, inst.blocks,
                                           inst.prior_fn());
    CHECK(result.rounds <= 3);
    for (std::size_t i = 0; i < result.trace.size(); ++i)
        CHECK(result.trace[i].round == static_cast<int>(i + 1));
}

TEST_CASE("pipeline runs are deterministic in (dataset, config, seed)") {
    auto inst = generate_noisy_instance({.n = 300,
                                         .cluster_size = 15,
                                         .dirty_blocks = 150,
                                         .dirty_block_size = 6,
                                         .seed = 8});
    PipelineConfig cfg;
    cfg.phi = 0.2;
    cfg.pair_budget_m = 2000;
    cfg.oracle_error_rate = 0.1;
    cfg.seed = 99;

    auto r1 = run_progressive_blocking(inst.records, inst.truth, cfg, inst.blocks,
                                       inst.prior_fn());
    auto r2 = run_progressive_blocking(inst.records, inst.truth, cfg, inst.blocks,
                                       inst.prior_fn());
    REQUIRE(r1.trace.size() == r2.trace.size());
    CHECK(r1.graph.same_edge_set(r2.graph));
    for (std::size_t i = 0; i < r1.trace.size(); ++i) {
        CHECK(r1.trace[i].h_edges == r2.trace[i].h_edges);
        CHECK(r1.trace[i].pair_recall == r2.trace[i].pair_recall);
        CHECK(r1.trace[i].er_queries == r2.trace[i].er_queries);
        CHECK(r1.trace[i].fscore == r2.trace[i].fscore);
    }
}

TEST_CASE("per-round budgets hold over a full feedback run") {
    auto inst = generate_noisy_instance({.n = 400,
                                         .cluster_size = 20,
                                         .dirty_blocks = 200,
                                         .dirty_block_size = 6,
                                         .seed = 13});
    PipelineConfig cfg;
    cfg.phi = 0.1;
    cfg.pair_budget_m = 3000;
    cfg.seed = 5;
    auto result = run_progressive_blocking(inst.records, inst.truth, cfg, inst.blocks,
                                           inst.prior_fn());

    auto n = inst.records.n();
    std::int64_t budget = effective_pair_budget(cfg, n);
    std::int64_t quota = er_progress_quota(cfg, n);
    std::int64_t bound = block_sample_bound(cfg.gamma, n);
    std::int64_t total_visited = 0;
    for (const auto& t : result.trace) {
        CHECK(t.pairs_visited <= budget);
        CHECK(t.candidates_emitted <= t.pairs_visited);
        CHECK(t.er_processed <= quota);
        CHECK(t.scoring_pairs <= 2 * static_cast<std::int64_t>(n) * bound * (bound - 1) / 2);
        // feedback storage: n match labels plus bounded non-match edges
        CHECK(t.nonmatch_edges <= result.state.pairs_progressed);
        total_visited += t.pairs_visited;
    }
    CHECK(total_visited <=
          (static_cast<std::int64_t>(max_rounds(cfg)) + 1) * budget);
    CHECK(result.state.pairs_progressed <=
          static_cast<std::int64_t>(max_rounds(cfg)) * quota);
}

TEST_CASE("feedback lifts recall on a budget-starved noisy instance") {
    auto inst = generate_noisy_instance({.n = 400,
                                         .cluster_size = 20,
                                         .dirty_blocks = 400,
                                         .dirty_block_size = 6,
                                         .seed = 17});
    PipelineConfig cfg;
    cfg.pair_budget_m = 4000;  // starves round 1: dirty blocks enumerate first
    cfg.phi = 0.1;
    cfg.seed = 3;

    auto result = run_progressive_blocking(inst.records, inst.truth, cfg, inst.blocks,
                                           inst.prior_fn());
    double first = result.trace.front().pair_recall;
    double last = result.trace.back().pair_recall;
    CHECK(first < 0.9);
    CHECK(last > first);
    CHECK(last >= 0.99);
}
