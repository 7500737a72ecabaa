#pragma once
// Run configuration and the flat key=value config file format.
#include <cstdint>
#include <string>

namespace progblock {

enum class BbMethod { standard, qgram, sorted_neighborhood, canopy };
enum class BcInit { tfidf, uniform };
enum class CcMethod { meta_blocking };
enum class ErMethod { edge, node };
enum class PriorKind { jaccard, noisy };
enum class DatasetFormat { csv, jsonl };

struct PipelineConfig {
    BbMethod bb_method = BbMethod::standard;
    BcInit bc_init = BcInit::tfidf;
    CcMethod cc_method = CcMethod::meta_blocking;
    ErMethod er_method = ErMethod::edge;

    double phi = 0.01;                     // feedback frequency, (0,1]
    std::int64_t pair_budget_m = 10'000'000;
    int hierarchy_depth_d = 10;
    int gamma = 12;                        // sampling constant
    int top_k_per_record = 100;
    double oracle_error_rate = 0.0;        // [0,1)
    std::uint64_t seed = 1;

    int qgram_q = 3;
    int window_w = 3;
    double canopy_threshold = 0.3;
    int max_blocks_per_record = 20;        // first-layer combination cap
    bool oracle_majority_vote = false;     // majority-of-3 wrapper
    bool node_progress_by_records = false; // count records instead of pairs

    // Input locations (CLI surface; unused by the library entry points that
    // take in-memory data).
    std::string dataset;
    DatasetFormat format = DatasetFormat::csv;
    std::string truth;
    std::string blocks_file;               // optional pre-built layer-1 blocks

    // Prior similarity source. "noisy" rebuilds the synthetic edge-similarity
    // model from (theta, beta, beta_prime, prior_seed) and the ground truth.
    PriorKind prior = PriorKind::jaccard;
    double theta = 0.5;
    double beta = 0.0;        // 0 means ln(n) at use
    double beta_prime = 0.0;
    std::uint64_t prior_seed = 0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    /// Parses a flat key=value file ('#' comments, blank lines allowed).
    /// Relative dataset/truth/blocks paths are resolved against the file's
    /// directory. Unknown keys are an error.
    static PipelineConfig from_file(const std::string& path);
};

/// Effective per-round candidate budget: min(M, ceil(4 n log2(n)^2)).
std::int64_t effective_pair_budget(const PipelineConfig& cfg, std::int32_t n);

/// Per-round resolution quota: phi * n * ceil(log2 n)^2 processed pairs
/// (or phi * n records when counting records).
std::int64_t er_progress_quota(const PipelineConfig& cfg, std::int32_t n);

/// phi bounds the number of rounds at ceil(1/phi).
int max_rounds(const PipelineConfig& cfg);

/// Score-sampling bound gamma * ceil(log2 n).
int block_sample_bound(int gamma, std::int32_t n);

const char* to_string(BbMethod m);
const char* to_string(BcInit m);
const char* to_string(ErMethod m);

}  // namespace progblock
