#include "progblock/evaluation.hpp"

#include <unordered_map>

#include "progblock/dsu.hpp"

namespace progblock {

namespace {

double recall_from_components(const DisjointSet& dsu, const GroundTruth& gt) {
    if (gt.match_count() == 0) return 1.0;
    // Connected pairs inside each truth cluster: group members by component.
    std::uint64_t connected = 0;
    std::unordered_map<std::int32_t, std::uint64_t> comp_sizes;
    for (const auto& cluster : gt.members()) {
        comp_sizes.clear();
        for (auto r : cluster) comp_sizes[dsu.find(r)]++;
        for (auto& [root, s] : comp_sizes) connected += s * (s - 1) / 2;
    }
    return static_cast<double>(connected) / static_cast<double>(gt.match_count());
}

}  // namespace

double pair_recall(const BlockingGraph& graph, const GroundTruth& gt) {
    DisjointSet dsu(gt.n());
    for (const auto& e : graph.edges())
        if (gt.same(e.u, e.v)) dsu.unite(e.u, e.v);
    return recall_from_components(dsu, gt);
}

double pair_recall(const std::vector<std::pair<std::int32_t, std::int32_t>>& edges,
                   const GroundTruth& gt) {
    DisjointSet dsu(gt.n());
    for (auto [u, v] : edges)
        if (gt.same(u, v)) dsu.unite(u, v);
    return recall_from_components(dsu, gt);
}

Metrics clustering_metrics(const std::vector<std::int32_t>& entity_labels,
                           const GroundTruth& gt) {
    Metrics m;
    // Predicted matching pairs are the intra-component pairs.
    std::unordered_map<std::int32_t, std::vector<std::int32_t>> components;
    for (std::size_t i = 0; i < entity_labels.size(); ++i)
        components[entity_labels[i]].push_back(static_cast<std::int32_t>(i));

    std::uint64_t predicted = 0, true_positive = 0;
    std::unordered_map<std::int32_t, std::uint64_t> by_cluster;
    for (auto& [label, members] : components) {
        std::uint64_t s = members.size();
        predicted += s * (s - 1) / 2;
        by_cluster.clear();
        for (auto r : members) by_cluster[gt.cluster_of(r)]++;
        for (auto& [c, k] : by_cluster) true_positive += k * (k - 1) / 2;
    }

    m.precision = predicted == 0
                      ? 1.0
                      : static_cast<double>(true_positive) / static_cast<double>(predicted);
    m.recall = gt.match_count() == 0
                   ? 1.0
                   : static_cast<double>(true_positive) / static_cast<double>(gt.match_count());
    m.fscore = (m.precision + m.recall) == 0.0
                   ? 0.0
                   : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

Metrics clustering_metrics(const ClusterState& state, const GroundTruth& gt) {
    auto m = clustering_metrics(state.entity_labels(), gt);
    m.queries = state.queries_spent;
    return m;
}

}  // namespace progblock
