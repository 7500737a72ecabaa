#pragma once
// Synthetic instance generators.
//
// Geometric model: records are uniform points on the unit sphere S^t; each
// record's block is itself plus its ceil(alpha*ln n) nearest neighbors (a
// ball of volume alpha*ln(n)/n holds that many points in expectation).
//
// Noisy edge model: a matching pair draws its similarity from [theta,1] with
// probability 1-beta/n and from [0,theta) otherwise; a non-matching pair
// mirrors this with beta'. Draws are deterministic per (pair, seed).
#include <cstdint>
#include <memory>
#include <vector>

#include "progblock/block.hpp"
#include "progblock/record.hpp"
#include "progblock/similarity.hpp"

namespace progblock {

struct GeometricModel {
    std::int32_t n = 0;
    int t = 2;                              // sphere dimension, points in R^(t+1)
    double alpha = 2.0;
    std::vector<std::int32_t> cluster_sizes;  // must sum to n
    std::uint64_t seed = 1;
    bool clustered_placement = false;       // co-locate clusters instead of iid points
};

struct GeometricInstance {
    RecordSet records;     // stub records, one unique token each
    BlockCollection blocks;
    GroundTruth truth;
    std::vector<std::vector<double>> points;
};

/// Throws on n < 2 or when cluster sizes do not sum to n.
GeometricInstance generate_geometric(const GeometricModel& m);

/// Blocks from points: each point plus all points within its k-th nearest
/// distance (ties included, so identical points yield the full set).
BlockCollection knn_ball_blocks(const std::vector<std::vector<double>>& points, int k);

struct NoisyEdgeModel {
    std::int32_t n = 0;
    double theta = 0.5;
    double beta = 0.0;
    double beta_prime = 0.0;
    std::uint64_t seed = 1;

    double mu_g() const {
        return (1.0 - beta / n) * (1.0 + theta) / 2.0 + (beta / n) * (theta / 2.0);
    }
    double mu_r() const {
        return (1.0 - beta_prime / n) * (theta / 2.0) + (beta_prime / n) * (1.0 + theta) / 2.0;
    }

    /// Similarity draw for the pair; deterministic per (pair, seed).
    double similarity(std::int32_t u, std::int32_t v, bool is_match) const;
};

struct NoisyInstanceParams {
    std::int32_t n = 2000;
    std::int32_t cluster_size = 20;
    std::int32_t dirty_blocks = 1000;
    std::int32_t dirty_block_size = 6;
    double theta = 0.5;
    double beta = 0.0;        // 0 means ln(n)
    double beta_prime = 0.0;  // 0 means ln(n)
    std::uint64_t seed = 1;
};

struct NoisyInstance {
    RecordSet records;      // stub records
    BlockCollection blocks; // one clean block per cluster + random dirty blocks
    GroundTruth truth;
    NoisyEdgeModel model;

    /// Prior that draws from the edge model against the instance truth.
    SimilarityStore::PriorFn prior_fn() const;
};

NoisyInstance generate_noisy_instance(const NoisyInstanceParams& p);

/// Placeholder records "r0".."r{n-1}", one attribute, one unique token each.
RecordSet stub_records(std::int32_t n);

}  // namespace progblock
