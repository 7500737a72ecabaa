#pragma once
// Incremental pair matching and clustering over the blocking graph.
//
// ClusterState persists across rounds: a union-find of positive answers plus
// non-match edges between entity representatives. A positive answer that
// contradicts a stored non-match wins and drops the stale edge.
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "progblock/blocking_graph.hpp"
#include "progblock/dsu.hpp"
#include "progblock/oracle.hpp"
#include "progblock/similarity.hpp"

namespace progblock {

struct ErRoundStats {
    std::int64_t processed = 0;  // pairs queried or transitively settled this call
    std::int64_t queries = 0;
    std::int64_t positives = 0;
    std::int64_t negatives = 0;
    bool exhausted = false;      // nothing left to process in the given graph
};

class ClusterState {
public:
    ClusterState() : ClusterState(0) {}
    explicit ClusterState(std::int32_t n);

    std::int32_t n() const { return n_; }
    std::int32_t entity_of(std::int32_t u) const { return dsu_.find(u); }
    std::int32_t entity_size(std::int32_t u) const { return dsu_.component_size(u); }
    bool same(std::int32_t u, std::int32_t v) const { return dsu_.same(u, v); }

    /// true / false when the pair is settled (directly or transitively).
    std::optional<bool> resolved(std::int32_t u, std::int32_t v) const;

    void record_match(std::int32_t u, std::int32_t v);
    void record_nonmatch(std::int32_t u, std::int32_t v);

    bool pair_processed(std::int32_t u, std::int32_t v) const {
        return processed_pairs_.count(pair_key(u, v)) > 0;
    }
    void mark_pair_processed(std::int32_t u, std::int32_t v) {
        processed_pairs_.insert(pair_key(u, v));
    }

    bool record_processed(std::int32_t r) const { return processed_records_.count(r) > 0; }
    void mark_record_processed(std::int32_t r) { processed_records_.insert(r); }

    std::vector<std::int32_t> entity_labels() const;
    std::vector<std::pair<std::int32_t, std::int32_t>> nonmatch_pairs() const;
    std::int64_t nonmatch_edge_count() const { return static_cast<std::int64_t>(nonmatch_.size()); }
    const std::unordered_set<std::uint64_t>& processed_pairs() const { return processed_pairs_; }

    std::int64_t queries_spent = 0;
    std::int64_t pairs_progressed = 0;

private:
    std::int32_t n_;
    DisjointSet dsu_;
    std::unordered_set<std::uint64_t> nonmatch_;             // between current roots
    std::unordered_map<std::int32_t, std::vector<std::int32_t>> nonmatch_adj_;
    std::unordered_set<std::uint64_t> processed_pairs_;
    std::unordered_set<std::int32_t> processed_records_;

    void drop_nonmatch(std::int32_t a, std::int32_t b);
    void add_nonmatch(std::int32_t a, std::int32_t b);
};

/// Processes unsettled edges in non-increasing weight order. Transitively
/// settled pairs count toward the quota without a query. Stops after `quota`
/// pairs processed in this call or when the graph is exhausted.
ErRoundStats run_edge_er(const BlockingGraph& graph, Oracle& oracle,
                         ClusterState& state, std::int64_t quota);

/// Processes records in non-increasing degree order; each record is queried
/// against one representative of each neighboring formed cluster (by falling
/// edge weight) until a positive answer. Records that stayed single retry in
/// later calls once the graph offers new neighbor clusters; placed records
/// are final. With progress_by_records the quota counts first-time records
/// instead of pairs.
ErRoundStats run_node_er(const BlockingGraph& graph, Oracle& oracle,
                         ClusterState& state, std::int64_t quota,
                         bool progress_by_records = false);

/// Mirrors the cluster state into the similarity store (labels + non-match
/// entity pairs). Priors of unresolved pairs are untouched.
void apply_feedback(SimilarityStore& sim, const ClusterState& state);

/// Runs the matcher over the graph until nothing is left to process: the
/// traditional post-blocking ER pass over the final candidate set.
ErRoundStats complete_er(const BlockingGraph& graph, Oracle& oracle, ClusterState& state,
                         bool node_ordering);

}  // namespace progblock
