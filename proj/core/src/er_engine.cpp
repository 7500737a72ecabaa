#include "progblock/er_engine.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace progblock {

ClusterState::ClusterState(std::int32_t n) : n_(n), dsu_(static_cast<std::size_t>(n)) {}

std::optional<bool> ClusterState::resolved(std::int32_t u, std::int32_t v) const {
    std::int32_t ru = dsu_.find(u), rv = dsu_.find(v);
    if (ru == rv) return true;
    if (nonmatch_.count(pair_key(ru, rv))) return false;
    return std::nullopt;
}

void ClusterState::add_nonmatch(std::int32_t a, std::int32_t b) {
    if (nonmatch_.insert(pair_key(a, b)).second) {
        nonmatch_adj_[a].push_back(b);
        nonmatch_adj_[b].push_back(a);
    }
}

void ClusterState::drop_nonmatch(std::int32_t a, std::int32_t b) {
    nonmatch_.erase(pair_key(a, b));
    auto scrub = [&](std::int32_t from, std::int32_t gone) {
        auto it = nonmatch_adj_.find(from);
        if (it == nonmatch_adj_.end()) return;
        auto& vec = it->second;
        vec.erase(std::remove(vec.begin(), vec.end(), gone), vec.end());
        if (vec.empty()) nonmatch_adj_.erase(it);
    };
    scrub(a, b);
    scrub(b, a);
}

void ClusterState::record_match(std::int32_t u, std::int32_t v) {
    std::int32_t ru = dsu_.find(u), rv = dsu_.find(v);
    if (ru == rv) return;
    // A stale non-match between the merging entities loses to the positive.
    if (nonmatch_.count(pair_key(ru, rv))) drop_nonmatch(ru, rv);
    auto [winner, loser] = dsu_.unite(ru, rv);
    auto it = nonmatch_adj_.find(loser);
    if (it == nonmatch_adj_.end()) return;
    auto partners = std::move(it->second);
    nonmatch_adj_.erase(it);
    for (auto x : partners) {
        nonmatch_.erase(pair_key(loser, x));
        auto& xa = nonmatch_adj_[x];
        xa.erase(std::remove(xa.begin(), xa.end(), loser), xa.end());
        if (x == winner) continue;  // contradiction resolved in favor of the merge
        if (nonmatch_.insert(pair_key(winner, x)).second) {
            nonmatch_adj_[winner].push_back(x);
            xa.push_back(winner);
        }
        if (xa.empty()) nonmatch_adj_.erase(x);
    }
}

void ClusterState::record_nonmatch(std::int32_t u, std::int32_t v) {
    std::int32_t ru = dsu_.find(u), rv = dsu_.find(v);
    if (ru == rv) return;  // positive evidence dominates
    add_nonmatch(ru, rv);
}

std::vector<std::int32_t> ClusterState::entity_labels() const {
    std::vector<std::int32_t> out(n_);
    for (std::int32_t i = 0; i < n_; ++i) out[i] = dsu_.find(i);
    return out;
}

std::vector<std::pair<std::int32_t, std::int32_t>> ClusterState::nonmatch_pairs() const {
    std::vector<std::pair<std::int32_t, std::int32_t>> out;
    out.reserve(nonmatch_.size());
    for (auto key : nonmatch_)
        out.emplace_back(static_cast<std::int32_t>(key >> 32),
                         static_cast<std::int32_t>(key & 0xffffffffu));
    return out;
}

namespace {

std::vector<std::int32_t> edges_by_weight(const BlockingGraph& graph) {
    std::vector<std::int32_t> order(graph.edges().size());
    std::iota(order.begin(), order.end(), 0);
    const auto& edges = graph.edges();
    std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        if (edges[a].weight != edges[b].weight) return edges[a].weight > edges[b].weight;
        if (edges[a].u != edges[b].u) return edges[a].u < edges[b].u;
        return edges[a].v < edges[b].v;
    });
    return order;
}

}  // namespace

ErRoundStats run_edge_er(const BlockingGraph& graph, Oracle& oracle, ClusterState& state,
                         std::int64_t quota) {
    if (quota < 1) throw std::invalid_argument("run_edge_er: quota must be >= 1");
    ErRoundStats stats;
    auto order = edges_by_weight(graph);
    const auto& edges = graph.edges();

    for (auto idx : order) {
        if (stats.processed >= quota) return stats;
        auto [u, v, w] = edges[idx];
        if (state.pair_processed(u, v)) continue;  // settled in an earlier round
        auto verdict = state.resolved(u, v);
        if (verdict.has_value()) {
            // Transitively inferred: progress without a query.
            state.mark_pair_processed(u, v);
            ++stats.processed;
            ++state.pairs_progressed;
            continue;
        }
        bool match = oracle.answer(u, v);
        ++stats.queries;
        ++state.queries_spent;
        if (match) {
            state.record_match(u, v);
            ++stats.positives;
        } else {
            state.record_nonmatch(u, v);
            ++stats.negatives;
        }
        state.mark_pair_processed(u, v);
        ++stats.processed;
        ++state.pairs_progressed;
    }
    stats.exhausted = true;
    return stats;
}

ErRoundStats run_node_er(const BlockingGraph& graph, Oracle& oracle, ClusterState& state,
                         std::int64_t quota, bool progress_by_records) {
    if (quota < 1) throw std::invalid_argument("run_node_er: quota must be >= 1");
    ErRoundStats stats;

    // Neighbor lists with weights, heaviest first.
    std::int32_t n = graph.n();
    std::vector<std::vector<std::pair<double, std::int32_t>>> nbrs(n);
    for (const auto& e : graph.edges()) {
        nbrs[e.u].emplace_back(e.weight, e.v);
        nbrs[e.v].emplace_back(e.weight, e.u);
    }
    std::vector<std::int32_t> record_order;
    record_order.reserve(n);
    for (std::int32_t r = 0; r < n; ++r)
        if (!nbrs[r].empty()) record_order.push_back(r);
    std::sort(record_order.begin(), record_order.end(), [&](std::int32_t a, std::int32_t b) {
        if (graph.degree(a) != graph.degree(b)) return graph.degree(a) > graph.degree(b);
        return a < b;
    });

    std::int64_t records_done = 0;
    auto budget_left = [&]() {
        return progress_by_records ? records_done < quota : stats.processed < quota;
    };

    for (auto v : record_order) {
        if (!budget_left()) return stats;
        // Placed records stay put; unplaced ones may retry when the graph
        // grew new neighbor clusters since their last attempt.
        bool first_time = !state.record_processed(v);
        if (!first_time && state.entity_size(v) > 1) continue;

        auto& cand = nbrs[v];
        std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });

        // One representative per formed neighbor cluster, in weight order.
        std::unordered_set<std::int32_t> tried_clusters;
        bool interrupted = false;
        for (auto [w, nb] : cand) {
            if (!state.record_processed(nb)) continue;
            std::int32_t root = state.entity_of(nb);
            if (!tried_clusters.insert(root).second) continue;

            if (!progress_by_records && stats.processed >= quota) {
                interrupted = true;  // resume this record next round
                break;
            }
            bool counted = !state.pair_processed(v, nb);
            auto verdict = state.resolved(v, nb);
            bool match;
            if (verdict.has_value()) {
                match = *verdict;
            } else {
                match = oracle.answer(v, nb);
                ++stats.queries;
                ++state.queries_spent;
                if (match) ++stats.positives;
                else ++stats.negatives;
                if (match) state.record_match(v, nb);
                else state.record_nonmatch(v, nb);
            }
            if (counted) {
                state.mark_pair_processed(v, nb);
                ++stats.processed;
                ++state.pairs_progressed;
            }
            if (match) break;
        }
        if (interrupted) return stats;
        state.mark_record_processed(v);
        if (first_time) ++records_done;
    }
    stats.exhausted = true;
    return stats;
}

void apply_feedback(SimilarityStore& sim, const ClusterState& state) {
    sim.set_feedback(state.entity_labels(), state.nonmatch_pairs());
}

ErRoundStats complete_er(const BlockingGraph& graph, Oracle& oracle, ClusterState& state,
                         bool node_ordering) {
    ErRoundStats total;
    const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 4;
    while (true) {
        ErRoundStats s = node_ordering ? run_node_er(graph, oracle, state, big, false)
                                       : run_edge_er(graph, oracle, state, big);
        total.processed += s.processed;
        total.queries += s.queries;
        total.positives += s.positives;
        total.negatives += s.negatives;
        total.exhausted = s.exhausted;
        if (s.queries == 0 && s.processed == 0) break;  // a pass with no progress
    }
    return total;
}

}  // namespace progblock
