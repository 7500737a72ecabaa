#include "progblock/hierarchy.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "progblock/util.hpp"

namespace progblock {

std::size_t BlockHierarchy::KeyHash::operator()(const std::vector<std::int32_t>& v) const {
    return static_cast<std::size_t>(hash_ids(v));
}

bool keep_refined_block(double child_score, std::int64_t child_size,
                        const std::vector<double>& parent_scores,
                        const std::vector<std::int64_t>& parent_sizes,
                        std::int32_t n_records) {
    double score_prod = 1.0;
    for (double s : parent_scores) score_prod *= s;
    if (child_score > score_prod) return true;
    double size_prod = 1.0;
    for (auto s : parent_sizes) size_prod *= static_cast<double>(s) / n_records;
    return static_cast<double>(child_size) / n_records > size_prod;
}

namespace {

std::vector<std::int32_t> intersect_sorted(const std::vector<std::int32_t>& a,
                                           const std::vector<std::int32_t>& b) {
    std::vector<std::int32_t> out;
    out.reserve(std::min(a.size(), b.size()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

BlockHierarchy BlockHierarchy::build(const BlockCollection& base, std::int32_t n_records,
                                     int depth, int cap, HierarchyBuildStats* stats) {
    if (depth < 1) throw std::invalid_argument("BlockHierarchy: depth must be >= 1");
    if (cap < 2) throw std::invalid_argument("BlockHierarchy: cap must be >= 2");

    BlockHierarchy h;
    h.depth_ = depth;
    h.base_count_ = base.size();
    h.layer_ids_.assign(std::max(depth, 1), {});

    h.blocks_.reserve(base.blocks.size());
    for (const auto& b : base.blocks) {
        HierBlock hb;
        hb.id = b.id;
        hb.level = 1;
        hb.members = b.members;
        hb.constituents = {b.id};
        hb.active = true;
        h.layer_ids_[0].push_back(hb.id);
        h.index_.emplace(hb.constituents, hb.id);
        h.blocks_.push_back(std::move(hb));
        h.base_keys_.push_back(b.key);
    }

    const int max_level = depth - 1;  // intersections live in layers 2..depth-1
    if (max_level < 2) {
        if (stats) *stats = h.stats_;
        return h;
    }

    // Per-record capped block list: the cap smallest layer-1 blocks, id order.
    std::unordered_map<std::uint64_t, std::vector<std::vector<std::int32_t>>> seen_lists;
    std::vector<std::int32_t> lst;

    for (std::int32_t v = 0; v < n_records; ++v) {
        const auto& owned = base.record_to_blocks[v];
        if (owned.size() < 2) continue;
        lst.assign(owned.begin(), owned.end());
        if (static_cast<int>(lst.size()) > cap) {
            std::sort(lst.begin(), lst.end(), [&](std::int32_t a, std::int32_t b) {
                auto sa = h.blocks_[a].members.size(), sb = h.blocks_[b].members.size();
                return sa != sb ? sa < sb : a < b;
            });
            lst.resize(cap);
        }
        std::sort(lst.begin(), lst.end());

        // Records with identical capped lists contribute identical subsets.
        auto lh = hash_ids(lst);
        auto& bucket = seen_lists[lh];
        bool dup = false;
        for (const auto& prev : bucket)
            if (prev == lst) { dup = true; break; }
        if (dup) {
            ++h.stats_.records_skipped_dup;
            continue;
        }
        bucket.push_back(lst);

        // DFS over id-ordered subsets. An extension is materialized only when
        // it strictly shrinks the current member set; a non-shrinking block is
        // redundant (the same members exist without it) and its whole subtree
        // is reachable through subsets that omit it.
        struct Frame {
            std::int32_t block_id;
            std::size_t next;
        };
        std::vector<Frame> stack;
        std::vector<std::vector<std::int32_t>> member_stack;
        std::vector<std::vector<std::int32_t>> key_stack;

        for (std::size_t start = 0; start + 1 < lst.size(); ++start) {
            stack.clear();
            member_stack.clear();
            key_stack.clear();
            stack.push_back({lst[start], start + 1});
            member_stack.push_back(h.blocks_[lst[start]].members);
            key_stack.push_back({lst[start]});

            while (!stack.empty()) {
                auto& top = stack.back();
                if (top.next >= lst.size()) {
                    stack.pop_back();
                    member_stack.pop_back();
                    key_stack.pop_back();
                    continue;
                }
                std::int32_t b = lst[top.next++];
                int new_level = static_cast<int>(key_stack.back().size()) + 1;
                if (new_level > max_level) continue;

                ++h.stats_.combination_attempts;
                auto inter = intersect_sorted(member_stack.back(), h.blocks_[b].members);
                if (inter.size() < 2) continue;
                if (inter.size() == member_stack.back().size()) continue;  // no shrink

                auto key = key_stack.back();
                key.push_back(b);  // b > all current ids, key stays sorted

                std::int32_t child_id;
                auto it = h.index_.find(key);
                if (it != h.index_.end()) {
                    child_id = it->second;
                } else {
                    HierBlock hb;
                    hb.id = static_cast<std::int32_t>(h.blocks_.size());
                    hb.level = new_level;
                    hb.members = inter;
                    hb.constituents = key;
                    hb.parent_a = stack.back().block_id;  // key minus its max id
                    hb.parent_b = -1;                     // resolved after the build
                    hb.active = false;  // cleaning activates keepers each round
                    child_id = hb.id;
                    h.layer_ids_[new_level - 1].push_back(child_id);
                    h.index_.emplace(hb.constituents, child_id);
                    h.blocks_.push_back(std::move(hb));
                }

                if (new_level < max_level && top.next < lst.size()) {
                    std::size_t resume = top.next;
                    stack.push_back({child_id, resume});
                    member_stack.push_back(std::move(inter));
                    key_stack.push_back(std::move(key));
                }
            }
        }
    }

    // Second parent = constituents minus the min id. Any subset of a
    // materialized constituent set is itself materialized (a block that fails
    // to shrink some subset cannot shrink its supersets either), so the
    // lookup is only resolvable once every record has been walked.
    for (auto& hb : h.blocks_) {
        if (hb.level < 2) continue;
        std::vector<std::int32_t> minus_min(hb.constituents.begin() + 1, hb.constituents.end());
        auto pit = h.index_.find(minus_min);
        if (pit == h.index_.end())
            throw std::logic_error("hierarchy: missing parent for refined block");
        hb.parent_b = pit->second;
    }

    if (stats) *stats = h.stats_;
    return h;
}

std::int32_t BlockHierarchy::active_count() const {
    std::int32_t c = 0;
    for (const auto& b : blocks_)
        if (b.active) ++c;
    return c;
}

std::pair<std::int32_t, std::int32_t> BlockHierarchy::direct_parents(std::int32_t id) const {
    const auto& b = blocks_[id];
    if (b.level < 2) throw std::invalid_argument("direct_parents: layer-1 blocks have no parents");
    return {b.parent_a, b.parent_b};
}

std::vector<std::int32_t> BlockHierarchy::nearest_active_parents(std::int32_t id) const {
    const auto& b = blocks_[id];
    if (b.level < 2)
        throw std::invalid_argument("nearest_active_parents: layer-1 blocks have no parents");
    std::vector<std::int32_t> out;
    std::vector<std::int32_t> work = {b.parent_a, b.parent_b};
    while (!work.empty()) {
        std::int32_t p = work.back();
        work.pop_back();
        const auto& pb = blocks_[p];
        if (pb.active || pb.level == 1) {
            out.push_back(p);
        } else {
            work.push_back(pb.parent_a);
            work.push_back(pb.parent_b);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void BlockHierarchy::clean_layers(const std::vector<double>& scores, std::int32_t n_records) {
    if (scores.size() != blocks_.size())
        throw std::invalid_argument("clean_layers: scores must cover every block");
    for (auto& b : blocks_) b.active = true;

    std::vector<double> parent_scores;
    std::vector<std::int64_t> parent_sizes;
    for (std::size_t layer = 1; layer < layer_ids_.size(); ++layer) {
        for (auto id : layer_ids_[layer]) {
            auto parents = nearest_active_parents(id);
            parent_scores.clear();
            parent_sizes.clear();
            for (auto p : parents) {
                parent_scores.push_back(scores[p]);
                parent_sizes.push_back(static_cast<std::int64_t>(blocks_[p].members.size()));
            }
            blocks_[id].active = keep_refined_block(
                scores[id], static_cast<std::int64_t>(blocks_[id].members.size()),
                parent_scores, parent_sizes, n_records);
        }
    }
}

std::int32_t BlockHierarchy::find_by_constituents(std::vector<std::int32_t> constituents) const {
    std::sort(constituents.begin(), constituents.end());
    auto it = index_.find(constituents);
    return it == index_.end() ? -1 : it->second;
}

std::string BlockHierarchy::display_key(std::int32_t id) const {
    const auto& b = blocks_[id];
    if (b.level == 1) return base_keys_[id];
    std::string out;
    for (std::size_t i = 0; i < b.constituents.size(); ++i) {
        if (i) out += "&";
        out += base_keys_[b.constituents[i]];
    }
    return out;
}

std::vector<LayerCount> BlockHierarchy::layer_counts() const {
    std::vector<LayerCount> out;
    for (std::size_t layer = 0; layer < layer_ids_.size(); ++layer) {
        if (layer > 0 && layer_ids_[layer].empty()) continue;
        LayerCount lc;
        lc.level = static_cast<int>(layer + 1);
        lc.blocks = static_cast<std::int32_t>(layer_ids_[layer].size());
        lc.active = 0;
        for (auto id : layer_ids_[layer])
            if (blocks_[id].active) ++lc.active;
        out.push_back(lc);
    }
    return out;
}

std::vector<std::vector<std::int32_t>> BlockHierarchy::active_blocks_per_record(
    std::int32_t n_records) const {
    std::vector<std::vector<std::int32_t>> out(n_records);
    for (const auto& b : blocks_) {
        if (!b.active) continue;
        for (auto m : b.members) out[m].push_back(b.id);
    }
    return out;  // block ids ascend per record because blocks_ is id-ordered
}

}  // namespace progblock
