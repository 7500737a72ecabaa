#pragma once
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "progblock/util.hpp"

namespace progblock {

struct WeightedEdge {
    std::int32_t u, v;  // u < v
    double weight;
};

// Candidate-pair graph emitted by comparison cleaning. Edges are unordered,
// unique, never self-loops.
class BlockingGraph {
public:
    BlockingGraph() = default;

    static BlockingGraph from_edges(std::vector<WeightedEdge> edges, std::int32_t n_records);

    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<WeightedEdge>& edges() const { return edges_; }
    bool has(std::int32_t u, std::int32_t v) const { return index_.count(pair_key(u, v)) > 0; }
    std::int32_t degree(std::int32_t u) const { return degree_[u]; }
    std::int32_t n() const { return static_cast<std::int32_t>(degree_.size()); }

    /// Edge-set equality; weights are ignored.
    bool same_edge_set(const BlockingGraph& other) const;

private:
    std::vector<WeightedEdge> edges_;  // sorted by (u, v)
    std::unordered_map<std::uint64_t, std::int32_t> index_;
    std::vector<std::int32_t> degree_;
};

}  // namespace progblock
