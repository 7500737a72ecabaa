#include "progblock/record.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

namespace progblock {

std::vector<std::string> tokenize_words(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> tokenize_words(
    const std::vector<std::pair<std::string, std::string>>& attributes) {
    std::vector<std::string> out;
    for (const auto& [name, value] : attributes) {
        auto toks = tokenize_words(value);
        out.insert(out.end(), toks.begin(), toks.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> tokenize_qgrams(
    const std::vector<std::pair<std::string, std::string>>& attributes, int q) {
    if (q < 2) throw std::invalid_argument("tokenize_qgrams: q must be >= 2");
    std::vector<std::string> out;
    for (const auto& [name, value] : attributes) {
        for (const auto& word : tokenize_words(value)) {
            if (static_cast<int>(word.size()) < q) {
                out.push_back(word);  // short words kept whole, no padding
            } else {
                for (std::size_t i = 0; i + q <= word.size(); ++i)
                    out.push_back(word.substr(i, q));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

RecordSet RecordSet::from_records(std::vector<Record> records) {
    RecordSet rs;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].id != static_cast<std::int32_t>(i))
            throw std::invalid_argument("RecordSet: ids must be 0..n-1 in order");
        records[i].tokens = tokenize_words(records[i].attributes);
    }
    rs.records_ = std::move(records);

    std::unordered_map<std::string, std::int32_t> dict;
    rs.token_ids_.resize(rs.records_.size());
    rs.unique_token_ids_.resize(rs.records_.size());
    for (std::size_t i = 0; i < rs.records_.size(); ++i) {
        const auto& rec = rs.records_[i];
        rs.max_attributes_ = std::max(rs.max_attributes_, static_cast<int>(rec.attributes.size()));
        if (rec.attributes.size() != rs.records_[0].attributes.size())
            rs.uniform_schema_ = false;
        auto& ids = rs.token_ids_[i];
        ids.reserve(rec.tokens.size());
        for (const auto& t : rec.tokens) {
            auto [it, inserted] = dict.emplace(t, static_cast<std::int32_t>(dict.size()));
            ids.push_back(it->second);
        }
        std::sort(ids.begin(), ids.end());
        auto& uniq = rs.unique_token_ids_[i];
        uniq = ids;
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    }
    rs.token_names_.resize(dict.size());
    for (auto& [name, id] : dict) rs.token_names_[id] = name;
    return rs;
}

namespace {

// Multiset intersection size of two sorted-with-duplicates id vectors.
std::int64_t multiset_intersection(const std::vector<std::int32_t>& a,
                                   const std::vector<std::int32_t>& b) {
    std::int64_t inter = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++inter; ++i; ++j; }
    }
    return inter;
}

}  // namespace

double RecordSet::jaccard_multiset(std::int32_t u, std::int32_t v) const {
    const auto& a = token_ids_[u];
    const auto& b = token_ids_[v];
    if (a.empty() && b.empty()) return 0.0;
    std::int64_t inter = multiset_intersection(a, b);
    std::int64_t uni = static_cast<std::int64_t>(a.size()) + static_cast<std::int64_t>(b.size()) - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double RecordSet::jaccard_set(std::int32_t u, std::int32_t v) const {
    const auto& a = unique_token_ids_[u];
    const auto& b = unique_token_ids_[v];
    if (a.empty() && b.empty()) return 0.0;
    std::int64_t inter = multiset_intersection(a, b);
    std::int64_t uni = static_cast<std::int64_t>(a.size()) + static_cast<std::int64_t>(b.size()) - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

GroundTruth GroundTruth::from_labels(std::vector<std::int32_t> cluster_of) {
    GroundTruth gt;
    std::unordered_map<std::int32_t, std::int32_t> remap;
    for (auto& label : cluster_of) {
        auto [it, inserted] = remap.emplace(label, static_cast<std::int32_t>(remap.size()));
        label = it->second;
    }
    gt.members_.resize(remap.size());
    for (std::size_t i = 0; i < cluster_of.size(); ++i)
        gt.members_[cluster_of[i]].push_back(static_cast<std::int32_t>(i));
    for (const auto& c : gt.members_) {
        std::uint64_t s = c.size();
        gt.match_count_ += s * (s - 1) / 2;
    }
    gt.cluster_of_ = std::move(cluster_of);
    return gt;
}

}  // namespace progblock
