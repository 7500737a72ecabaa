#pragma once
// Block scoring: score(B) = p(B) * u(B).
//
// p(B) is the mean pairwise matching probability on a Theta(log n) sample of
// the block; u(B) = exp(-H) where H is the entropy of a greedy estimate of
// the cluster split inside the sample. Round 1 uses a size-based init instead.
#include <cstdint>
#include <string>
#include <vector>

#include "progblock/config.hpp"
#include "progblock/hierarchy.hpp"
#include "progblock/similarity.hpp"

namespace progblock {

struct BlockScore {
    double p = 0.0;
    double u = 1.0;
    double score = 0.0;
    bool sampled = false;
    std::int32_t sample_size = 0;
};

/// log(1 + n/|B|); monotone decreasing in the block size.
double tfidf_init(std::int64_t block_size, std::int32_t n_records);

/// 1.0 for every block.
double uniform_init();

/// All members when |B| <= gamma*ceil(log2 n); otherwise a uniform sample of
/// that size without replacement, deterministic in the seed.
std::vector<std::int32_t> sample_block(const std::vector<std::int32_t>& members,
                                       int gamma, std::int32_t n_records,
                                       std::uint64_t seed);

/// Mean p_m over all pairs of the sample. Throws when the sample has < 2.
double matching_probability(const std::vector<std::int32_t>& block_sample,
                            const SimilarityStore& sim);

/// Greedy cluster-split entropy estimate: expected cluster size per sampled
/// record, sorted non-increasing, cut into parts of 1+floor(E_head) (clamped);
/// returns exp(-H) of the part-size distribution. Natural log.
double estimate_uniformity(const std::vector<std::int32_t>& block_sample,
                           const SimilarityStore& sim);

/// p, u, score for one block at a given sampling seed. Samples of size < 2
/// get p=0, u=1, score=0.
BlockScore score_one_block(const std::vector<std::int32_t>& members, int gamma,
                           std::int32_t n_records, std::uint64_t seed,
                           const SimilarityStore& sim);

struct ScoreSet {
    std::vector<BlockScore> detail;
    std::vector<double> value;  // detail[i].score, kept flat for the hot paths
};

struct ScoringStats {
    std::int64_t pairs_touched = 0;
    std::int64_t blocks_rescored = 0;
};

/// Round 1 initializes every block from cfg.bc_init. Later rounds re-score
/// only the top 2n blocks by previous-round score (ties: smaller block, then
/// lower id); all other blocks keep their previous score.
void score_blocks(const BlockHierarchy& h, const SimilarityStore& sim,
                  const PipelineConfig& cfg, std::int32_t n_records, int round,
                  ScoreSet& scores, ScoringStats* stats = nullptr);

struct TopBlockInfo {
    std::string key;
    double p, u, score;
};

/// Highest-scoring active blocks, for the per-round trace.
std::vector<TopBlockInfo> top_scored_blocks(const BlockHierarchy& h,
                                            const ScoreSet& scores, int count);

}  // namespace progblock
