#include "progblock/block_building.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "progblock/util.hpp"

namespace progblock {

void BlockCollection::finalize(std::int32_t n_records) {
    std::vector<Block> kept;
    kept.reserve(blocks.size());
    for (auto& b : blocks) {
        std::sort(b.members.begin(), b.members.end());
        b.members.erase(std::unique(b.members.begin(), b.members.end()), b.members.end());
        if (b.members.empty()) continue;
        b.id = static_cast<std::int32_t>(kept.size());
        kept.push_back(std::move(b));
    }
    blocks = std::move(kept);
    record_to_blocks.assign(n_records, {});
    for (const auto& b : blocks)
        for (auto m : b.members) record_to_blocks[m].push_back(b.id);
}

namespace {

BlockCollection blocks_from_token_map(const std::map<std::string, std::vector<std::int32_t>>& by_key,
                                      std::int32_t n_records) {
    BlockCollection out;
    out.blocks.reserve(by_key.size());
    for (const auto& [key, members] : by_key) {
        Block b;
        b.id = static_cast<std::int32_t>(out.blocks.size());
        b.key = key;
        b.members = members;
        out.blocks.push_back(std::move(b));
    }
    out.finalize(n_records);
    return out;
}

}  // namespace

BlockCollection standard_blocking(const RecordSet& rs) {
    std::map<std::string, std::vector<std::int32_t>> by_token;
    for (std::int32_t i = 0; i < rs.n(); ++i)
        for (auto t : rs.unique_token_ids(i)) by_token[rs.token_name(t)].push_back(i);
    return blocks_from_token_map(by_token, rs.n());
}

BlockCollection qgram_blocking(const RecordSet& rs, int q) {
    if (q < 2) throw std::invalid_argument("qgram_blocking: q must be >= 2");
    std::map<std::string, std::vector<std::int32_t>> by_gram;
    for (std::int32_t i = 0; i < rs.n(); ++i) {
        auto grams = tokenize_qgrams(rs.record(i).attributes, q);
        grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
        for (const auto& g : grams) by_gram[g].push_back(i);
    }
    return blocks_from_token_map(by_gram, rs.n());
}

namespace {

// One token ordering: maps distinct token -> records holding it (in scope).
struct TokenOrdering {
    std::vector<std::string> sorted_tokens;
    std::unordered_map<std::string, std::vector<std::int32_t>> postings;
};

TokenOrdering ordering_for_attribute(const RecordSet& rs, int attr /* -1 = all */) {
    TokenOrdering ord;
    for (std::int32_t i = 0; i < rs.n(); ++i) {
        const auto& rec = rs.record(i);
        std::vector<std::string> toks;
        if (attr < 0) {
            toks = rec.tokens;
        } else if (attr < static_cast<int>(rec.attributes.size())) {
            toks = tokenize_words(rec.attributes[attr].second);
        }
        toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
        for (auto& t : toks) ord.postings[t].push_back(i);
    }
    ord.sorted_tokens.reserve(ord.postings.size());
    for (const auto& [t, _] : ord.postings) ord.sorted_tokens.push_back(t);
    std::sort(ord.sorted_tokens.begin(), ord.sorted_tokens.end());
    return ord;
}

}  // namespace

BlockCollection sorted_neighborhood(const RecordSet& rs, int w) {
    if (w < 2) throw std::invalid_argument("sorted_neighborhood: w must be >= 2");

    std::vector<int> attrs;
    if (rs.uniform_schema() && rs.max_attributes() > 1) {
        for (int a = 0; a < rs.max_attributes(); ++a) attrs.push_back(a);
    } else {
        attrs.push_back(-1);  // schema-less fallback: one all-token ordering
    }

    BlockCollection out;
    std::unordered_map<std::uint64_t, std::vector<std::vector<std::int32_t>>> seen_members;
    auto add_window = [&](const TokenOrdering& ord, std::size_t begin, std::size_t count,
                          int attr) {
        Block b;
        std::string key = attr < 0 ? "w:" : "w" + std::to_string(attr) + ":";
        for (std::size_t i = begin; i < begin + count; ++i) {
            if (i > begin) key += "|";
            key += ord.sorted_tokens[i];
            const auto& posting = ord.postings.at(ord.sorted_tokens[i]);
            b.members.insert(b.members.end(), posting.begin(), posting.end());
        }
        std::sort(b.members.begin(), b.members.end());
        b.members.erase(std::unique(b.members.begin(), b.members.end()), b.members.end());
        if (b.members.empty()) return;
        auto h = hash_ids(b.members);
        auto& bucket = seen_members[h];
        for (const auto& prev : bucket)
            if (prev == b.members) return;  // dedup by member set
        bucket.push_back(b.members);
        b.key = std::move(key);
        b.id = static_cast<std::int32_t>(out.blocks.size());
        out.blocks.push_back(std::move(b));
    };

    for (int attr : attrs) {
        auto ord = ordering_for_attribute(rs, attr);
        std::size_t m = ord.sorted_tokens.size();
        if (m == 0) continue;
        if (m <= static_cast<std::size_t>(w)) {
            add_window(ord, 0, m, attr);
        } else {
            for (std::size_t begin = 0; begin + w <= m; ++begin)
                add_window(ord, begin, w, attr);
        }
    }
    out.finalize(rs.n());
    return out;
}

namespace {

double scoped_jaccard(const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::size_t i = 0, j = 0;
    std::int64_t inter = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++inter; ++i; ++j; }
    }
    std::int64_t uni = static_cast<std::int64_t>(a.size() + b.size()) - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

void canopy_pass(const RecordSet& rs, const std::vector<std::vector<std::int32_t>>& token_sets,
                 double loose, double tight, SplitMix& rng, const std::string& scope,
                 BlockCollection& out) {
    std::int32_t n = rs.n();
    // Inverted index over this scope's tokens.
    std::unordered_map<std::int32_t, std::vector<std::int32_t>> postings;
    std::vector<std::int32_t> pool;
    for (std::int32_t i = 0; i < n; ++i) {
        if (token_sets[i].empty()) continue;  // token-less records cannot reach any threshold
        pool.push_back(i);
        for (auto t : token_sets[i]) postings[t].push_back(i);
    }
    std::vector<bool> consumed(n, false);
    std::vector<std::int32_t> live = pool;

    while (!live.empty()) {
        std::size_t pick = static_cast<std::size_t>(rng.next_below(live.size()));
        std::int32_t seed_rec = live[pick];

        // Candidates share at least one token with the seed.
        std::unordered_set<std::int32_t> cand;
        for (auto t : token_sets[seed_rec]) {
            auto it = postings.find(t);
            if (it != postings.end()) cand.insert(it->second.begin(), it->second.end());
        }

        Block b;
        b.key = "canopy:" + scope + ":" + std::to_string(seed_rec);
        std::vector<std::int32_t> to_consume;
        for (auto r : cand) {
            double sim = scoped_jaccard(token_sets[seed_rec], token_sets[r]);
            if (sim >= loose) b.members.push_back(r);
            if (sim >= tight) to_consume.push_back(r);
        }
        if (b.members.empty()) b.members.push_back(seed_rec);
        consumed[seed_rec] = true;
        for (auto r : to_consume) consumed[r] = true;

        b.id = static_cast<std::int32_t>(out.blocks.size());
        std::sort(b.members.begin(), b.members.end());
        out.blocks.push_back(std::move(b));

        live.erase(std::remove_if(live.begin(), live.end(),
                                  [&](std::int32_t r) { return consumed[r]; }),
                   live.end());
    }
}

}  // namespace

BlockCollection canopy_clustering(const RecordSet& rs, double sim_threshold, std::uint64_t seed) {
    if (!(sim_threshold > 0.0 && sim_threshold <= 1.0))
        throw std::invalid_argument("canopy_clustering: threshold must be in (0,1]");
    double loose = sim_threshold;
    double tight = std::min(1.0, 2.0 * sim_threshold);

    BlockCollection out;
    std::uint64_t pass = 0;

    if (rs.uniform_schema() && rs.max_attributes() > 1) {
        for (int a = 0; a < rs.max_attributes(); ++a) {
            std::vector<std::vector<std::int32_t>> scoped(rs.n());
            std::unordered_map<std::string, std::int32_t> dict;
            for (std::int32_t i = 0; i < rs.n(); ++i) {
                auto toks = tokenize_words(rs.record(i).attributes[a].second);
                toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
                for (auto& t : toks) {
                    auto [it, ins] = dict.emplace(t, static_cast<std::int32_t>(dict.size()));
                    scoped[i].push_back(it->second);
                }
                std::sort(scoped[i].begin(), scoped[i].end());
            }
            SplitMix rng(mix64(seed, ++pass));
            canopy_pass(rs, scoped, loose, tight, rng, "a" + std::to_string(a), out);
        }
    }
    {
        std::vector<std::vector<std::int32_t>> all(rs.n());
        for (std::int32_t i = 0; i < rs.n(); ++i) all[i] = rs.unique_token_ids(i);
        SplitMix rng(mix64(seed, ++pass));
        canopy_pass(rs, all, loose, tight, rng, "all", out);
    }
    out.finalize(rs.n());
    return out;
}

BlockCollection build_base_blocks(const RecordSet& rs, const PipelineConfig& cfg) {
    switch (cfg.bb_method) {
        case BbMethod::standard: return standard_blocking(rs);
        case BbMethod::qgram: return qgram_blocking(rs, cfg.qgram_q);
        case BbMethod::sorted_neighborhood: return sorted_neighborhood(rs, cfg.window_w);
        case BbMethod::canopy: return canopy_clustering(rs, cfg.canopy_threshold, cfg.seed);
    }
    throw std::logic_error("build_base_blocks: unhandled method");
}

}  // namespace progblock
