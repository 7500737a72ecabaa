#include "progblock/blocking_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace progblock {

BlockingGraph BlockingGraph::from_edges(std::vector<WeightedEdge> edges, std::int32_t n_records) {
    BlockingGraph g;
    g.degree_.assign(n_records, 0);
    for (auto& e : edges) {
        if (e.u == e.v) throw std::invalid_argument("BlockingGraph: self pair");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    g.edges_.reserve(edges.size());
    g.index_.reserve(edges.size() * 2);
    for (auto& e : edges) {
        auto key = pair_key(e.u, e.v);
        if (g.index_.count(key)) throw std::invalid_argument("BlockingGraph: duplicate pair");
        g.index_.emplace(key, static_cast<std::int32_t>(g.edges_.size()));
        g.degree_[e.u]++;
        g.degree_[e.v]++;
        g.edges_.push_back(e);
    }
    return g;
}

bool BlockingGraph::same_edge_set(const BlockingGraph& other) const {
    if (edges_.size() != other.edges_.size()) return false;
    for (const auto& e : edges_)
        if (!other.index_.count(pair_key(e.u, e.v))) return false;
    return true;
}

}  // namespace progblock
