#include "progblock/comparison_cleaning.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace progblock {

CandidateEnumeration enumerate_candidates(const BlockHierarchy& h,
                                          const std::vector<double>& scores,
                                          std::int64_t budget) {
    if (budget < 1) throw std::invalid_argument("enumerate_candidates: budget must be >= 1");
    if (static_cast<std::int32_t>(scores.size()) != h.size())
        throw std::invalid_argument("enumerate_candidates: scores must cover every block");

    std::vector<std::int32_t> order;
    order.reserve(h.size());
    for (std::int32_t id = 0; id < h.size(); ++id)
        if (h.active(id)) order.push_back(id);
    std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        auto sa = h.block(a).members.size(), sb = h.block(b).members.size();
        if (sa != sb) return sa < sb;
        return a < b;
    });

    CandidateEnumeration out;
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(std::min<std::int64_t>(budget, 1 << 22)));

    for (auto id : order) {
        const auto& members = h.block(id).members;
        if (members.size() < 2) continue;
        for (std::size_t i = 0; i + 1 < members.size() && out.visited < budget; ++i) {
            for (std::size_t j = i + 1; j < members.size() && out.visited < budget; ++j) {
                ++out.visited;  // every visit, duplicate or not, spends budget
                auto key = pair_key(members[i], members[j]);
                if (seen.insert(key).second)
                    out.pairs.emplace_back(members[i], members[j]);
            }
        }
        if (out.visited >= budget) break;
    }
    return out;
}

BlockingGraph meta_block(const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs,
                         const SimilarityStore& sim, const BlockHierarchy& h,
                         const std::vector<double>& scores, int top_k,
                         std::int32_t n_records) {
    if (top_k < 1) throw std::invalid_argument("meta_block: top_k must be >= 1");

    auto rec_blocks = h.active_blocks_per_record(n_records);

    // weight = prior similarity * sum of scores of shared active blocks.
    std::vector<double> weights(pairs.size());
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        auto [u, v] = pairs[pi];
        const auto& bu = rec_blocks[u];
        const auto& bv = rec_blocks[v];
        double shared = 0.0;
        std::size_t i = 0, j = 0;
        while (i < bu.size() && j < bv.size()) {
            if (bu[i] < bv[j]) ++i;
            else if (bv[j] < bu[i]) ++j;
            else { shared += scores[bu[i]]; ++i; ++j; }
        }
        weights[pi] = sim.prior(u, v) * shared;
    }

    // Node-centric top-k with OR retention.
    std::vector<std::vector<std::int32_t>> incident(n_records);
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        incident[pairs[pi].first].push_back(static_cast<std::int32_t>(pi));
        incident[pairs[pi].second].push_back(static_cast<std::int32_t>(pi));
    }
    std::vector<char> keep(pairs.size(), 0);
    for (std::int32_t r = 0; r < n_records; ++r) {
        auto& inc = incident[r];
        if (inc.empty()) continue;
        auto better = [&](std::int32_t a, std::int32_t b) {
            if (weights[a] != weights[b]) return weights[a] > weights[b];
            return pairs[a] < pairs[b];
        };
        std::size_t take = std::min<std::size_t>(inc.size(), static_cast<std::size_t>(top_k));
        std::nth_element(inc.begin(), inc.begin() + take - 1, inc.end(), better);
        for (std::size_t i = 0; i < take; ++i) keep[inc[i]] = 1;
    }

    std::vector<WeightedEdge> edges;
    edges.reserve(pairs.size());
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        auto [u, v] = pairs[pi];
        bool resolved = sim.resolved(u, v).has_value();
        if (keep[pi] || resolved) edges.push_back({u, v, weights[pi]});
    }
    return BlockingGraph::from_edges(std::move(edges), n_records);
}

}  // namespace progblock
