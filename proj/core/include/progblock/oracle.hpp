#pragma once
// Pairwise match oracle: ground truth with Bernoulli error injection.
// Answers are a pure function of (pair, seed), so repeated queries agree.
#include <cstdint>
#include <unordered_set>

#include "progblock/record.hpp"
#include "progblock/util.hpp"

namespace progblock {

class Oracle {
public:
    Oracle(const GroundTruth* gt, double error_rate, std::uint64_t seed,
           bool majority_of_three = false)
        : gt_(gt), error_rate_(error_rate), seed_(seed), majority_(majority_of_three) {}

    /// Throws std::invalid_argument on u == v.
    bool answer(std::int32_t u, std::int32_t v);

    /// Distinct pairs asked so far.
    std::int64_t queries() const { return static_cast<std::int64_t>(asked_.size()); }

    double error_rate() const { return error_rate_; }

private:
    bool one_draw(std::int32_t u, std::int32_t v, std::uint64_t salt) const;

    const GroundTruth* gt_;
    double error_rate_;
    std::uint64_t seed_;
    bool majority_;
    std::unordered_set<std::uint64_t> asked_;
};

}  // namespace progblock
