#pragma once
// The progressive blocking loop: bootstrap with a classical strategy, then
// alternate {incremental ER -> feedback -> re-score -> re-clean hierarchy ->
// rebuild graph} until the graph stabilizes or the round limit is hit.
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "progblock/block.hpp"
#include "progblock/blocking_graph.hpp"
#include "progblock/config.hpp"
#include "progblock/er_engine.hpp"
#include "progblock/hierarchy.hpp"
#include "progblock/record.hpp"
#include "progblock/scoring.hpp"
#include "progblock/similarity.hpp"

namespace progblock {

struct RoundTrace {
    int round = 0;
    std::int64_t h_edges = 0;
    std::int64_t candidates_emitted = 0;
    std::int64_t pairs_visited = 0;       // enumeration work, budget-capped
    double pair_recall = 0.0;
    std::int64_t er_queries = 0;          // this round
    std::int64_t er_positives = 0;
    std::int64_t er_negatives = 0;
    std::int64_t er_processed = 0;
    std::int64_t scoring_pairs = 0;       // p_m evaluations spent on sampling
    std::int64_t blocks_active = 0;
    std::int64_t nonmatch_edges = 0;      // feedback storage size
    double fscore = 0.0;                  // partial clustering F so far
    std::int64_t wall_ms = 0;
    std::vector<LayerCount> layers;
    std::vector<TopBlockInfo> top_blocks;
};

struct PipelineResult {
    BlockingGraph graph;
    ClusterState state;
    std::vector<RoundTrace> trace;
    bool converged = false;
    int rounds = 0;
};

/// true iff the two graphs have identical edge sets (weights ignored).
bool converged(const BlockingGraph& h_old, const BlockingGraph& h_new);

/// The oracle the pipeline queries. Building the same one lets a caller keep
/// resolving the returned graph after the blocking loop ends (answers are a
/// pure function of pair and seed, so continuation stays consistent).
Oracle make_pipeline_oracle(const PipelineConfig& cfg, const GroundTruth& gt);

/// Full run with base blocks built per cfg.bb_method and the Jaccard prior.
/// The ground truth is consumed only by the oracle and the trace metrics.
PipelineResult run_progressive_blocking(const RecordSet& rs, const GroundTruth& gt,
                                        const PipelineConfig& cfg);

/// Variant with externally supplied layer-1 blocks and/or prior similarity
/// (synthetic instances).
PipelineResult run_progressive_blocking(const RecordSet& rs, const GroundTruth& gt,
                                        const PipelineConfig& cfg,
                                        const BlockCollection& base,
                                        SimilarityStore::PriorFn prior);

}  // namespace progblock
