#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace progblock {

struct Block {
    std::int32_t id = 0;
    std::string key;                    // token, q-gram, window signature or canopy seed
    int level = 1;                      // 1 for all blocks built by a base strategy
    std::vector<std::int32_t> members;  // sorted, duplicate-free, non-empty
};

struct BlockCollection {
    std::vector<Block> blocks;
    std::vector<std::vector<std::int32_t>> record_to_blocks;

    /// Sorts/dedups members, drops empty blocks, re-densifies ids and
    /// rebuilds record_to_blocks as the exact inverse of membership.
    void finalize(std::int32_t n_records);

    std::int32_t size() const { return static_cast<std::int32_t>(blocks.size()); }
};

}  // namespace progblock
