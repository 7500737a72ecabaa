#pragma once
// Input records, tokenization and ground truth.
//
// A Record keeps its attribute list verbatim plus a cached multiset of word
// tokens. RecordSet interns tokens into integer ids once so the hot paths
// (Jaccard, inverted indexes) never touch strings.
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace progblock {

struct Record {
    std::int32_t id = 0;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<std::string> tokens;  // sorted multiset, word scheme
};

/// Lowercases and splits on runs of non-alphanumeric characters.
/// Empty tokens are dropped; result is sorted (multiset form).
std::vector<std::string> tokenize_words(const std::string& text);

/// Word tokens of all attribute values of a record, as one sorted multiset.
std::vector<std::string> tokenize_words(
    const std::vector<std::pair<std::string, std::string>>& attributes);

/// Character q-grams of each word token. Words shorter than q are kept whole.
/// Requires q >= 2.
std::vector<std::string> tokenize_qgrams(
    const std::vector<std::pair<std::string, std::string>>& attributes, int q);

class RecordSet {
public:
    RecordSet() = default;

    /// Takes ownership of the records; ids must be exactly 0..n-1 in order.
    /// Tokens are (re)derived from the attributes and interned.
    static RecordSet from_records(std::vector<Record> records);

    std::int32_t n() const { return static_cast<std::int32_t>(records_.size()); }
    const Record& record(std::int32_t i) const { return records_[i]; }
    const std::vector<Record>& records() const { return records_; }

    /// Sorted token ids with multiplicity.
    const std::vector<std::int32_t>& token_ids(std::int32_t i) const {
        return token_ids_[i];
    }
    /// Sorted distinct token ids.
    const std::vector<std::int32_t>& unique_token_ids(std::int32_t i) const {
        return unique_token_ids_[i];
    }

    std::int32_t token_count() const { return static_cast<std::int32_t>(token_names_.size()); }
    const std::string& token_name(std::int32_t t) const { return token_names_[t]; }

    /// Jaccard over the token multisets (min/max counts).
    double jaccard_multiset(std::int32_t u, std::int32_t v) const;
    /// Jaccard over the distinct-token sets.
    double jaccard_set(std::int32_t u, std::int32_t v) const;

    /// Max attribute count across records (0 for an empty set).
    int max_attributes() const { return max_attributes_; }
    /// True when every record carries the same number of attributes.
    bool uniform_schema() const { return uniform_schema_; }

private:
    std::vector<Record> records_;
    std::vector<std::string> token_names_;
    std::vector<std::vector<std::int32_t>> token_ids_;
    std::vector<std::vector<std::int32_t>> unique_token_ids_;
    int max_attributes_ = 0;
    bool uniform_schema_ = true;
};

// Entity ground truth: a dense entity id per record.
class GroundTruth {
public:
    GroundTruth() = default;

    /// Renumbers labels densely in first-appearance order and precomputes
    /// cluster members and the total matching-pair count.
    static GroundTruth from_labels(std::vector<std::int32_t> cluster_of);

    std::int32_t n() const { return static_cast<std::int32_t>(cluster_of_.size()); }
    std::int32_t cluster_count() const { return static_cast<std::int32_t>(members_.size()); }
    std::int32_t cluster_of(std::int32_t i) const { return cluster_of_[i]; }
    bool same(std::int32_t u, std::int32_t v) const { return cluster_of_[u] == cluster_of_[v]; }
    std::uint64_t match_count() const { return match_count_; }
    const std::vector<std::vector<std::int32_t>>& members() const { return members_; }

private:
    std::vector<std::int32_t> cluster_of_;
    std::vector<std::vector<std::int32_t>> members_;
    std::uint64_t match_count_ = 0;
};

}  // namespace progblock
