#include "progblock/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "progblock/util.hpp"

namespace progblock {

double tfidf_init(std::int64_t block_size, std::int32_t n_records) {
    if (block_size < 1) throw std::invalid_argument("tfidf_init: empty block");
    return std::log(1.0 + static_cast<double>(n_records) / static_cast<double>(block_size));
}

double uniform_init() { return 1.0; }

std::vector<std::int32_t> sample_block(const std::vector<std::int32_t>& members, int gamma,
                                       std::int32_t n_records, std::uint64_t seed) {
    if (gamma < 1) throw std::invalid_argument("sample_block: gamma must be >= 1");
    std::size_t bound = static_cast<std::size_t>(block_sample_bound(gamma, n_records));
    if (members.size() <= bound) return members;
    SplitMix rng(seed);
    auto sample = sample_without_replacement(members, bound, rng);
    std::sort(sample.begin(), sample.end());
    return sample;
}

double matching_probability(const std::vector<std::int32_t>& block_sample,
                            const SimilarityStore& sim) {
    std::size_t s = block_sample.size();
    if (s < 2) throw std::invalid_argument("matching_probability: sample must have >= 2 records");
    double sum = 0.0;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j)
            sum += sim.pm(block_sample[i], block_sample[j]);
    return sum / (static_cast<double>(s) * (s - 1) / 2.0);
}

double estimate_uniformity(const std::vector<std::int32_t>& block_sample,
                           const SimilarityStore& sim) {
    std::size_t s = block_sample.size();
    if (s == 0) throw std::invalid_argument("estimate_uniformity: empty sample");
    if (s == 1) return 1.0;

    // Expected in-block cluster size per record: sum of p_m to the others.
    std::vector<double> expected(s, 0.0);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i + 1; j < s; ++j) {
            double p = sim.pm(block_sample[i], block_sample[j]);
            expected[i] += p;
            expected[j] += p;
        }
    }
    std::sort(expected.begin(), expected.end(), std::greater<>());

    double entropy = 0.0;
    std::size_t pos = 0;
    while (pos < s) {
        std::size_t part = 1 + static_cast<std::size_t>(std::floor(expected[pos]));
        part = std::min(part, s - pos);  // clamp the tail
        double frac = static_cast<double>(part) / static_cast<double>(s);
        entropy -= frac * std::log(frac);
        pos += part;
    }
    return std::exp(-entropy);
}

BlockScore score_one_block(const std::vector<std::int32_t>& members, int gamma,
                           std::int32_t n_records, std::uint64_t seed,
                           const SimilarityStore& sim) {
    BlockScore out;
    out.sampled = true;
    auto sample = sample_block(members, gamma, n_records, seed);
    out.sample_size = static_cast<std::int32_t>(sample.size());
    if (sample.size() < 2) {
        out.p = 0.0;  // no pairs to produce; score is moot but defined
        out.u = 1.0;
        out.score = 0.0;
        return out;
    }
    out.p = matching_probability(sample, sim);
    out.u = estimate_uniformity(sample, sim);
    out.score = out.p * out.u;
    return out;
}

void score_blocks(const BlockHierarchy& h, const SimilarityStore& sim,
                  const PipelineConfig& cfg, std::int32_t n_records, int round,
                  ScoreSet& scores, ScoringStats* stats) {
    if (round < 1) throw std::invalid_argument("score_blocks: round must be >= 1");
    std::int32_t m = h.size();

    if (round == 1) {
        scores.detail.assign(m, {});
        scores.value.assign(m, 0.0);
        for (std::int32_t id = 0; id < m; ++id) {
            double v = cfg.bc_init == BcInit::tfidf
                           ? tfidf_init(static_cast<std::int64_t>(h.block(id).members.size()),
                                        n_records)
                           : uniform_init();
            scores.detail[id].score = v;
            scores.detail[id].sampled = false;
            scores.value[id] = v;
        }
        return;
    }

    if (static_cast<std::int32_t>(scores.value.size()) != m)
        throw std::invalid_argument("score_blocks: score set does not match hierarchy");

    // Top 2n blocks by previous-round score; everyone else keeps their score.
    std::vector<std::int32_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::size_t take = std::min<std::size_t>(order.size(), 2 * static_cast<std::size_t>(n_records));
    auto better = [&](std::int32_t a, std::int32_t b) {
        if (scores.value[a] != scores.value[b]) return scores.value[a] > scores.value[b];
        auto sa = h.block(a).members.size(), sb = h.block(b).members.size();
        if (sa != sb) return sa < sb;
        return a < b;
    };
    if (take < order.size()) {
        std::nth_element(order.begin(), order.begin() + take, order.end(), better);
        order.resize(take);
    }

    for (auto id : order) {
        std::uint64_t seed = mix64(cfg.seed, mix64(static_cast<std::uint64_t>(round),
                                                   static_cast<std::uint64_t>(id)));
        auto bs = score_one_block(h.block(id).members, cfg.gamma, n_records, seed, sim);
        if (stats) {
            stats->pairs_touched +=
                static_cast<std::int64_t>(bs.sample_size) * (bs.sample_size - 1) / 2;
            ++stats->blocks_rescored;
        }
        scores.detail[id] = bs;
        scores.value[id] = bs.score;
    }
}

std::vector<TopBlockInfo> top_scored_blocks(const BlockHierarchy& h, const ScoreSet& scores,
                                            int count) {
    std::vector<std::int32_t> ids;
    for (std::int32_t id = 0; id < h.size(); ++id)
        if (h.active(id)) ids.push_back(id);
    auto better = [&](std::int32_t a, std::int32_t b) {
        if (scores.value[a] != scores.value[b]) return scores.value[a] > scores.value[b];
        return a < b;
    };
    std::size_t take = std::min<std::size_t>(ids.size(), static_cast<std::size_t>(count));
    std::partial_sort(ids.begin(), ids.begin() + take, ids.end(), better);
    ids.resize(take);
    std::vector<TopBlockInfo> out;
    out.reserve(ids.size());
    for (auto id : ids) {
        const auto& d = scores.detail[id];
        out.push_back({h.display_key(id), d.p, d.u, scores.value[id]});
    }
    return out;
}

}  // namespace progblock
