#pragma once
// On-disk formats: datasets (csv with header / jsonl), two-column ground
// truth csv, block collections, and edge dumps. Loaders throw
// std::runtime_error with the offending line number.
#include <string>
#include <vector>

#include "progblock/block.hpp"
#include "progblock/config.hpp"
#include "progblock/record.hpp"

namespace progblock {

RecordSet load_dataset(const std::string& path, DatasetFormat format);
/// Picks csv/jsonl from the file extension (.jsonl/.ndjson -> jsonl).
DatasetFormat format_from_path(const std::string& path);

/// csv writer; requires a uniform schema across records.
void write_dataset_csv(const std::string& path, const RecordSet& rs);
void write_dataset_jsonl(const std::string& path, const RecordSet& rs);

/// Two-column csv `record_id,entity_id` (header optional on load). Every
/// record id in [0, expected_n) must appear exactly once.
GroundTruth load_ground_truth(const std::string& path, std::int32_t expected_n);
void write_ground_truth(const std::string& path, const GroundTruth& gt);

/// Block file: csv `key,members` where members are space-separated record ids.
BlockCollection load_block_collection(const std::string& path, std::int32_t n_records);
void write_block_collection(const std::string& path, const BlockCollection& blocks);

struct EdgeRow {
    std::int32_t u, v;
    double weight;
};
void write_edge_csv(const std::string& path, const std::vector<EdgeRow>& edges);

}  // namespace progblock
