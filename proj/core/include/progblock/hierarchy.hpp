#pragma once
// Intersection block hierarchy.
//
// Layer 1 holds the base blocks. A block in layer q (2 <= q < depth) is the
// intersection of q distinct layer-1 blocks that all contain some witness
// record. Creation runs once; per-round cleaning only flips active flags, so
// the expensive part is shared across feedback rounds.
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "progblock/block.hpp"

namespace progblock {

struct HierBlock {
    std::int32_t id = 0;
    int level = 1;
    std::vector<std::int32_t> members;       // sorted record ids, size >= 2 for level >= 2
    std::vector<std::int32_t> constituents;  // sorted layer-1 block ids; {id} for level 1
    std::int32_t parent_a = -1;              // constituents minus max id
    std::int32_t parent_b = -1;              // constituents minus min id
    bool active = true;
};

struct HierarchyBuildStats {
    std::int64_t combination_attempts = 0;  // candidate extensions examined
    std::int64_t records_skipped_dup = 0;   // identical capped block lists
};

struct LayerCount {
    int level;
    std::int32_t blocks;
    std::int32_t active;
};

/// Keep rule for a refined block: its score beats the product of its parents'
/// scores, or its relative size beats the product of theirs.
bool keep_refined_block(double child_score, std::int64_t child_size,
                        const std::vector<double>& parent_scores,
                        const std::vector<std::int64_t>& parent_sizes,
                        std::int32_t n_records);

class BlockHierarchy {
public:
    /// Builds all layers from the base collection. For every record, subsets
    /// of its (at most `cap` smallest) layer-1 blocks are intersected; an
    /// intersection is materialized once per canonical constituent set when
    /// it has >= 2 members and is strictly smaller than the set it extends.
    /// Refined blocks start inactive; clean_layers() activates the keepers.
    static BlockHierarchy build(const BlockCollection& base, std::int32_t n_records,
                                int depth, int cap, HierarchyBuildStats* stats = nullptr);

    std::int32_t size() const { return static_cast<std::int32_t>(blocks_.size()); }
    const HierBlock& block(std::int32_t id) const { return blocks_[id]; }
    int depth() const { return depth_; }
    std::int32_t base_count() const { return base_count_; }

    bool active(std::int32_t id) const { return blocks_[id].active; }
    void set_active(std::int32_t id, bool a) { blocks_[id].active = a; }
    std::int32_t active_count() const;

    /// Direct parents (layer-1 blocks for a layer-2 block). Throws for layer 1.
    std::pair<std::int32_t, std::int32_t> direct_parents(std::int32_t id) const;

    /// Nearest active ancestors: deactivated parents are replaced by their own
    /// parents recursively. Result is sorted and duplicate-free. Throws for
    /// layer-1 blocks.
    std::vector<std::int32_t> nearest_active_parents(std::int32_t id) const;

    /// Re-evaluates every refined block bottom-up against the keep rule.
    /// Layer-1 blocks are never deactivated.
    void clean_layers(const std::vector<double>& scores, std::int32_t n_records);

    /// Canonical key lookup; -1 when the constituent set was not materialized.
    std::int32_t find_by_constituents(std::vector<std::int32_t> constituents) const;

    /// Human-readable key: base key for layer 1, parents joined with '&' above.
    std::string display_key(std::int32_t id) const;

    const std::vector<std::vector<std::int32_t>>& layers() const { return layer_ids_; }
    std::vector<LayerCount> layer_counts() const;

    /// Sorted active-block id list per record (layer-1 and active refined).
    std::vector<std::vector<std::int32_t>> active_blocks_per_record(std::int32_t n_records) const;

    std::int64_t combination_attempts() const { return stats_.combination_attempts; }

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<std::int32_t>& v) const;
    };

    std::vector<HierBlock> blocks_;
    std::vector<std::vector<std::int32_t>> layer_ids_;  // [level-1] -> block ids
    std::unordered_map<std::vector<std::int32_t>, std::int32_t, KeyHash> index_;
    std::vector<std::string> base_keys_;
    std::int32_t base_count_ = 0;
    int depth_ = 1;
    HierarchyBuildStats stats_;
};

}  // namespace progblock
