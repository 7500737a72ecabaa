#pragma once
// Pair recall of a blocking graph and pairwise clustering metrics.
#include <cstdint>
#include <vector>

#include "progblock/blocking_graph.hpp"
#include "progblock/er_engine.hpp"
#include "progblock/record.hpp"

namespace progblock {

struct Metrics {
    double pair_recall = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double fscore = 0.0;
    std::int64_t candidates = 0;
    std::int64_t queries = 0;
};

/// Fraction of true matching pairs whose endpoints are connected in the graph
/// restricted to true matching edges. 1.0 when the truth has no pairs.
double pair_recall(const BlockingGraph& graph, const GroundTruth& gt);

/// Same, from an explicit edge list.
double pair_recall(const std::vector<std::pair<std::int32_t, std::int32_t>>& edges,
                   const GroundTruth& gt);

/// Pairwise precision/recall/F over the intra-component pairs of the
/// clustering. Precision of an empty prediction is 1.
Metrics clustering_metrics(const std::vector<std::int32_t>& entity_labels,
                           const GroundTruth& gt);
Metrics clustering_metrics(const ClusterState& state, const GroundTruth& gt);

}  // namespace progblock
