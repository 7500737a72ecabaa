#pragma once
// First-layer block construction: one block per token / q-gram, sorted
// neighborhood windows, and two-threshold canopies.
#include <cstdint>

#include "progblock/block.hpp"
#include "progblock/config.hpp"
#include "progblock/record.hpp"

namespace progblock {

/// One block per distinct word token; members are all records containing it.
/// Singleton blocks are kept (they produce no pairs but may intersect later).
BlockCollection standard_blocking(const RecordSet& rs);

/// One block per distinct character q-gram (q >= 2).
BlockCollection qgram_blocking(const RecordSet& rs, int q);

/// Sorts the distinct tokens of each attribute position (single all-token
/// ordering when the schema is not uniform or has one attribute) and emits a
/// block per window of w consecutive distinct tokens, deduplicated by member
/// set. Requires w >= 2.
BlockCollection sorted_neighborhood(const RecordSet& rs, int w);

/// Canopies under unweighted set Jaccard: loose threshold = sim_threshold,
/// tight = min(1, 2*sim_threshold). One pass per attribute position (when the
/// schema is uniform with >= 2 attributes) plus one over all attributes.
BlockCollection canopy_clustering(const RecordSet& rs, double sim_threshold,
                                  std::uint64_t seed);

/// Dispatch on cfg.bb_method.
BlockCollection build_base_blocks(const RecordSet& rs, const PipelineConfig& cfg);

}  // namespace progblock
