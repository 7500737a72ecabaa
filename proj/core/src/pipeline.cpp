#include "progblock/pipeline.hpp"

#include <chrono>
#include <stdexcept>

#include "progblock/block_building.hpp"
#include "progblock/comparison_cleaning.hpp"
#include "progblock/evaluation.hpp"
#include "progblock/oracle.hpp"

namespace progblock {

bool converged(const BlockingGraph& h_old, const BlockingGraph& h_new) {
    return h_old.same_edge_set(h_new);
}

Oracle make_pipeline_oracle(const PipelineConfig& cfg, const GroundTruth& gt) {
    return Oracle(&gt, cfg.oracle_error_rate, mix64(cfg.seed, 0x0edcba11),
                  cfg.oracle_majority_vote);
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

// Resolved pairs that ER already touched stay in the graph even when the
// current enumeration no longer emits them; recall accounting stays stable
// and the ER engine skips them anyway.
BlockingGraph augment_with_processed(BlockingGraph g, const ClusterState& state,
                                     std::int32_t n_records) {
    std::vector<WeightedEdge> extra;
    for (auto key : state.processed_pairs()) {
        auto u = static_cast<std::int32_t>(key >> 32);
        auto v = static_cast<std::int32_t>(key & 0xffffffffu);
        if (!g.has(u, v)) extra.push_back({u, v, 0.0});
    }
    if (extra.empty()) return g;
    auto edges = g.edges();
    edges.insert(edges.end(), extra.begin(), extra.end());
    return BlockingGraph::from_edges(std::move(edges), n_records);
}

PipelineResult run_impl(const RecordSet& rs, const GroundTruth& gt, const PipelineConfig& cfg,
                        const BlockCollection& base, SimilarityStore sim) {
    cfg.validate();
    if (gt.n() != rs.n())
        throw std::invalid_argument("run_progressive_blocking: truth does not cover the dataset");

    const std::int32_t n = rs.n();
    const std::int64_t budget = effective_pair_budget(cfg, n);
    const std::int64_t quota = er_progress_quota(cfg, n);
    const int round_limit = max_rounds(cfg);

    PipelineResult result{BlockingGraph{}, ClusterState(n), {}, false, 0};
    Oracle oracle = make_pipeline_oracle(cfg, gt);

    auto t0 = Clock::now();
    // A single-round run never activates refined layers, so skip creating them.
    int depth = round_limit <= 1 ? 1 : cfg.hierarchy_depth_d;
    BlockHierarchy hierarchy =
        BlockHierarchy::build(base, n, depth, cfg.max_blocks_per_record);

    // Round 1: classical bootstrap. Only layer-1 blocks are active, scores
    // come from the chosen init, and the first graph is built before any ER.
    ScoreSet scores;
    score_blocks(hierarchy, sim, cfg, n, 1, scores);
    auto enumeration = enumerate_candidates(hierarchy, scores.value, budget);
    result.graph = meta_block(enumeration.pairs, sim, hierarchy, scores.value,
                              cfg.top_k_per_record, n);

    auto push_trace = [&](int round, const CandidateEnumeration& en, const ErRoundStats& er,
                          const ScoringStats& sc, Clock::time_point round_start) {
        RoundTrace t;
        t.round = round;
        t.h_edges = result.graph.edge_count();
        t.candidates_emitted = static_cast<std::int64_t>(en.pairs.size());
        t.pairs_visited = en.visited;
        t.pair_recall = pair_recall(result.graph, gt);
        t.er_queries = er.queries;
        t.er_positives = er.positives;
        t.er_negatives = er.negatives;
        t.er_processed = er.processed;
        t.scoring_pairs = sc.pairs_touched;
        t.blocks_active = hierarchy.active_count();
        t.nonmatch_edges = result.state.nonmatch_edge_count();
        t.fscore = clustering_metrics(result.state, gt).fscore;
        t.wall_ms = ms_since(round_start);
        t.layers = hierarchy.layer_counts();
        t.top_blocks = top_scored_blocks(hierarchy, scores, 20);
        result.trace.push_back(std::move(t));
    };

    push_trace(1, enumeration, {}, {}, t0);
    result.rounds = 1;

    for (int round = 2; round <= round_limit; ++round) {
        auto round_start = Clock::now();

        ErRoundStats er_stats =
            cfg.er_method == ErMethod::edge
                ? run_edge_er(result.graph, oracle, result.state, quota)
                : run_node_er(result.graph, oracle, result.state, quota,
                              cfg.node_progress_by_records);

        apply_feedback(sim, result.state);

        ScoringStats sc_stats;
        score_blocks(hierarchy, sim, cfg, n, round, scores, &sc_stats);
        hierarchy.clean_layers(scores.value, n);

        enumeration = enumerate_candidates(hierarchy, scores.value, budget);
        BlockingGraph h_new = meta_block(enumeration.pairs, sim, hierarchy, scores.value,
                                         cfg.top_k_per_record, n);
        h_new = augment_with_processed(std::move(h_new), result.state, n);

        bool stable = converged(result.graph, h_new);
        result.graph = std::move(h_new);
        push_trace(round, enumeration, er_stats, sc_stats, round_start);
        result.rounds = round;
        if (stable) {
            result.converged = true;
            break;
        }
    }
    return result;
}

}  // namespace

PipelineResult run_progressive_blocking(const RecordSet& rs, const GroundTruth& gt,
                                        const PipelineConfig& cfg) {
    auto base = build_base_blocks(rs, cfg);
    return run_impl(rs, gt, cfg, base, SimilarityStore(&rs));
}

PipelineResult run_progressive_blocking(const RecordSet& rs, const GroundTruth& gt,
                                        const PipelineConfig& cfg, const BlockCollection& base,
                                        SimilarityStore::PriorFn prior) {
    SimilarityStore sim = prior ? SimilarityStore(rs.n(), std::move(prior))
                                : SimilarityStore(&rs);
    return run_impl(rs, gt, cfg, base, std::move(sim));
}

}  // namespace progblock
