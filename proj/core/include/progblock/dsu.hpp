#pragma once
#include <cstdint>
#include <numeric>
#include <vector>

namespace progblock {

// Union-find with union by size. Tie-break on the smaller root id keeps
// merge results independent of call order details.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::int32_t find(std::int32_t x) const {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];  // path halving
            x = parent_[x];
        }
        return x;
    }

    bool same(std::int32_t a, std::int32_t b) const { return find(a) == find(b); }

    /// Merges the sets of a and b; returns {winner_root, loser_root}.
    /// winner == loser when already merged.
    std::pair<std::int32_t, std::int32_t> unite(std::int32_t a, std::int32_t b) {
        std::int32_t ra = find(a), rb = find(b);
        if (ra == rb) return {ra, ra};
        if (size_[ra] < size_[rb] || (size_[ra] == size_[rb] && rb < ra))
            std::swap(ra, rb);
        parent_[rb] = ra;
        size_[ra] += size_[rb];
        return {ra, rb};
    }

    std::int32_t component_size(std::int32_t x) const { return size_[find(x)]; }
    std::size_t size() const { return parent_.size(); }

private:
    mutable std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> size_;
};

}  // namespace progblock
