#pragma once
// Per-pair matching probability: a prior similarity overridden by resolved
// feedback. Matches are stored as one entity label per record (O(n)); non-
// matches as edges between entity labels, so one resolved non-match covers
// every cross pair of the two entities.
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "progblock/record.hpp"
#include "progblock/util.hpp"

namespace progblock {

class SimilarityStore {
public:
    using PriorFn = std::function<double(std::int32_t, std::int32_t)>;

    /// Prior = Jaccard over token multisets of rs.
    explicit SimilarityStore(const RecordSet* rs) : rs_(rs), n_(rs->n()) {}

    /// Prior supplied by the caller (synthetic models).
    SimilarityStore(std::int32_t n, PriorFn prior)
        : n_(n), prior_fn_(std::move(prior)) {}

    std::int32_t n() const { return n_; }

    double prior(std::int32_t u, std::int32_t v) const {
        return prior_fn_ ? prior_fn_(u, v) : rs_->jaccard_multiset(u, v);
    }

    /// 1 for resolved matches, 0 for resolved non-matches, prior otherwise.
    double pm(std::int32_t u, std::int32_t v) const {
        if (!entity_of_.empty()) {
            std::int32_t eu = entity_of_[u], ev = entity_of_[v];
            if (eu == ev) return 1.0;
            if (nonmatch_.count(pair_key(eu, ev))) return 0.0;
        }
        return prior(u, v);
    }

    /// Feedback verdict for the pair, if any.
    std::optional<bool> resolved(std::int32_t u, std::int32_t v) const {
        if (entity_of_.empty()) return std::nullopt;
        std::int32_t eu = entity_of_[u], ev = entity_of_[v];
        if (eu == ev) return true;
        if (nonmatch_.count(pair_key(eu, ev))) return false;
        return std::nullopt;
    }

    bool has_feedback() const { return !entity_of_.empty(); }
    std::int64_t nonmatch_edge_count() const {
        return static_cast<std::int64_t>(nonmatch_.size());
    }

    /// Replaces the feedback snapshot. entity_of must have n entries; the
    /// non-match pairs are between entity labels.
    void set_feedback(std::vector<std::int32_t> entity_of,
                      const std::vector<std::pair<std::int32_t, std::int32_t>>& nonmatch_pairs) {
        entity_of_ = std::move(entity_of);
        nonmatch_.clear();
        nonmatch_.reserve(nonmatch_pairs.size() * 2);
        for (auto [a, b] : nonmatch_pairs) nonmatch_.insert(pair_key(a, b));
    }

private:
    const RecordSet* rs_ = nullptr;
    std::int32_t n_ = 0;
    PriorFn prior_fn_;
    std::vector<std::int32_t> entity_of_;
    std::unordered_set<std::uint64_t> nonmatch_;
};

}  // namespace progblock
