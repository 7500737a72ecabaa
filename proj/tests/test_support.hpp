#pragma once
// Shared fixtures and helpers for the test suites.
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "progblock/block_building.hpp"
#include "progblock/record.hpp"
#include "progblock/util.hpp"

namespace progblock::testing {

// Eight car descriptions covering four entities: three Corvette C6 records,
// one Z6, three Malibu, one Citroen C6.
inline RecordSet cars_fixture() {
    std::vector<std::string> texts = {
        "chevy corvette c6",            // 0
        "chevy corvette c6 navigation", // 1
        "chevrolet corvette c6",        // 2
        "corvette z6 navigation",       // 3
        "chevy malibu navigation",      // 4
        "chevrolet chevy malibu",       // 5
        "chevrolet malibu",             // 6
        "citroen c6 navigation",        // 7
    };
    std::vector<Record> records(texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) {
        records[i].id = static_cast<std::int32_t>(i);
        records[i].attributes = {{"text", texts[i]}};
    }
    return RecordSet::from_records(std::move(records));
}

inline GroundTruth cars_truth() {
    // entities: c6 c6 c6 z6 ma ma ma ci
    return GroundTruth::from_labels({0, 0, 0, 1, 2, 2, 2, 3});
}

inline std::int32_t find_block(const BlockCollection& blocks, const std::string& key) {
    for (const auto& b : blocks.blocks)
        if (b.key == key) return b.id;
    return -1;
}

// Random records over a small token alphabet, for property-style checks.
inline RecordSet random_records(std::int32_t n, int tokens_per_record, int alphabet,
                                std::uint64_t seed) {
    SplitMix rng(seed);
    std::vector<Record> records(n);
    for (std::int32_t i = 0; i < n; ++i) {
        std::string text;
        for (int t = 0; t < tokens_per_record; ++t) {
            if (t) text += " ";
            text += "tok" + std::to_string(rng.next_below(alphabet));
        }
        records[i].id = i;
        records[i].attributes = {{"text", text}};
    }
    return RecordSet::from_records(std::move(records));
}

class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        for (int i = 0; i < 1000; ++i) {
            auto candidate = base / ("progblock_test_" + std::to_string(::getpid()) + "_" +
                                     std::to_string(counter_++));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create temp dir");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace progblock::testing
