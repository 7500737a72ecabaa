#pragma once
// Comparison cleaning: budgeted intra-block pair enumeration followed by
// node-centric top-k meta-blocking.
#include <cstdint>
#include <utility>
#include <vector>

#include "progblock/blocking_graph.hpp"
#include "progblock/hierarchy.hpp"
#include "progblock/similarity.hpp"

namespace progblock {

struct CandidateEnumeration {
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;  // deduped, order of emission
    std::int64_t visited = 0;  // pair visits counted against the budget (incl. duplicates)
};

/// Walks active blocks in score order (desc; ties: smaller block, lower id)
/// and emits each intra-block pair once. Every pair visit counts against the
/// budget, so enumeration work is bounded by budget + number of blocks. The
/// block straddling the budget is partially enumerated in member-id order.
CandidateEnumeration enumerate_candidates(const BlockHierarchy& h,
                                          const std::vector<double>& scores,
                                          std::int64_t budget);

/// weight(u,v) = prior(u,v) * sum of score(B) over active blocks containing
/// both. An edge survives when it ranks in the top-k list of either endpoint;
/// feedback-resolved pairs always survive.
BlockingGraph meta_block(const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs,
                         const SimilarityStore& sim, const BlockHierarchy& h,
                         const std::vector<double>& scores, int top_k,
                         std::int32_t n_records);

}  // namespace progblock
