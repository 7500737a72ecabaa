#include "progblock/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace progblock {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

// RFC-4180-ish row parser: quoted fields, "" escapes, \r tolerated.
std::vector<std::string> parse_csv_row(const std::string& line, const std::string& path,
                                       std::size_t lineno) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') { cur.push_back('"'); i += 2; continue; }
                quoted = false;
                ++i;
            } else {
                cur.push_back(c);
                ++i;
            }
        } else if (c == '"') {
            if (!cur.empty()) fail(path, lineno, "stray quote inside unquoted field");
            quoted = true;
            ++i;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
            ++i;
        } else if (c == '\r') {
            ++i;
        } else {
            cur.push_back(c);
            ++i;
        }
    }
    if (quoted) fail(path, lineno, "unterminated quoted field");
    fields.push_back(std::move(cur));
    return fields;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

std::int64_t parse_int_field(const std::string& s, const std::string& path, std::size_t lineno) {
    std::int64_t value = 0;
    auto begin = s.data();
    auto end = s.data() + s.size();
    while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
    auto [p, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || p != end) fail(path, lineno, "expected an integer, got '" + s + "'");
    return value;
}

}  // namespace

DatasetFormat format_from_path(const std::string& path) {
    auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "jsonl" || ext == "ndjson") return DatasetFormat::jsonl;
    return DatasetFormat::csv;
}

namespace {

RecordSet load_csv(const std::string& path) {
    auto in = open_or_throw(path);
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> header;
    std::vector<Record> records;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) {
            header = parse_csv_row(line, path, lineno);
            continue;
        }
        if (line.empty() || line == "\r") continue;
        auto fields = parse_csv_row(line, path, lineno);
        if (fields.size() != header.size())
            fail(path, lineno, "expected " + std::to_string(header.size()) + " fields, got " +
                                   std::to_string(fields.size()));
        Record rec;
        rec.id = static_cast<std::int32_t>(records.size());
        for (std::size_t c = 0; c < header.size(); ++c)
            rec.attributes.emplace_back(header[c], fields[c]);
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw std::runtime_error(path + ": empty dataset");
    return RecordSet::from_records(std::move(records));
}

RecordSet load_jsonl(const std::string& path) {
    auto in = open_or_throw(path);
    std::string line;
    std::size_t lineno = 0;
    std::vector<Record> records;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        nlohmann::ordered_json obj;
        try {
            obj = nlohmann::ordered_json::parse(line);
        } catch (const std::exception& e) {
            fail(path, lineno, std::string("invalid json: ") + e.what());
        }
        if (!obj.is_object()) fail(path, lineno, "expected a json object");
        Record rec;
        rec.id = static_cast<std::int32_t>(records.size());
        for (auto& [key, value] : obj.items()) {
            std::string text;
            if (value.is_string()) text = value.get<std::string>();
            else if (value.is_number_integer()) text = std::to_string(value.get<std::int64_t>());
            else if (value.is_number_float()) text = std::to_string(value.get<double>());
            else if (value.is_boolean()) text = value.get<bool>() ? "true" : "false";
            else if (value.is_null()) text = "";
            else fail(path, lineno, "attribute '" + key + "' is not a scalar");
            rec.attributes.emplace_back(key, std::move(text));
        }
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw std::runtime_error(path + ": empty dataset");
    return RecordSet::from_records(std::move(records));
}

}  // namespace

RecordSet load_dataset(const std::string& path, DatasetFormat format) {
    return format == DatasetFormat::csv ? load_csv(path) : load_jsonl(path);
}

void write_dataset_csv(const std::string& path, const RecordSet& rs) {
    if (rs.n() == 0) throw std::invalid_argument("write_dataset_csv: empty record set");
    const auto& first = rs.record(0).attributes;
    for (const auto& rec : rs.records()) {
        if (rec.attributes.size() != first.size())
            throw std::invalid_argument("write_dataset_csv: non-uniform schema, use jsonl");
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (std::size_t c = 0; c < first.size(); ++c)
        out << (c ? "," : "") << csv_escape(first[c].first);
    out << "\n";
    for (const auto& rec : rs.records()) {
        for (std::size_t c = 0; c < rec.attributes.size(); ++c)
            out << (c ? "," : "") << csv_escape(rec.attributes[c].second);
        out << "\n";
    }
}

void write_dataset_jsonl(const std::string& path, const RecordSet& rs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& rec : rs.records()) {
        nlohmann::ordered_json obj;
        for (const auto& [name, value] : rec.attributes) obj[name] = value;
        out << obj.dump() << "\n";
    }
}

GroundTruth load_ground_truth(const std::string& path, std::int32_t expected_n) {
    auto in = open_or_throw(path);
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::int32_t> labels(expected_n, -1);
    std::vector<bool> seen(expected_n, false);
    std::unordered_map<std::string, std::int32_t> entity_ids;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = parse_csv_row(line, path, lineno);
        if (fields.size() != 2) fail(path, lineno, "expected two columns record_id,entity_id");
        if (lineno == 1 && !fields[0].empty() && !std::isdigit(static_cast<unsigned char>(fields[0][0])))
            continue;  // header row
        std::int64_t rid = parse_int_field(fields[0], path, lineno);
        if (rid < 0 || rid >= expected_n)
            fail(path, lineno, "record id " + std::to_string(rid) + " not in dataset (n=" +
                                   std::to_string(expected_n) + ")");
        if (seen[rid]) fail(path, lineno, "duplicate record id " + std::to_string(rid));
        seen[rid] = true;
        auto [it, inserted] = entity_ids.emplace(fields[1], static_cast<std::int32_t>(entity_ids.size()));
        labels[rid] = it->second;
    }
    for (std::int32_t i = 0; i < expected_n; ++i)
        if (!seen[i])
            throw std::runtime_error(path + ": record id " + std::to_string(i) + " missing from truth");
    return GroundTruth::from_labels(std::move(labels));
}

void write_ground_truth(const std::string& path, const GroundTruth& gt) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "record_id,entity_id\n";
    for (std::int32_t i = 0; i < gt.n(); ++i) out << i << "," << gt.cluster_of(i) << "\n";
}

BlockCollection load_block_collection(const std::string& path, std::int32_t n_records) {
    auto in = open_or_throw(path);
    std::string line;
    std::size_t lineno = 0;
    BlockCollection out;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = parse_csv_row(line, path, lineno);
        if (fields.size() != 2) fail(path, lineno, "expected two columns key,members");
        if (lineno == 1 && fields[0] == "key") continue;
        Block b;
        b.id = static_cast<std::int32_t>(out.blocks.size());
        b.key = fields[0];
        std::istringstream ms(fields[1]);
        std::string tok;
        while (ms >> tok) {
            std::int64_t rid = parse_int_field(tok, path, lineno);
            if (rid < 0 || rid >= n_records)
                fail(path, lineno, "member id " + std::to_string(rid) + " out of range");
            b.members.push_back(static_cast<std::int32_t>(rid));
        }
        if (b.members.empty()) fail(path, lineno, "block '" + b.key + "' has no members");
        out.blocks.push_back(std::move(b));
    }
    out.finalize(n_records);
    return out;
}

void write_block_collection(const std::string& path, const BlockCollection& blocks) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "key,members\n";
    for (const auto& b : blocks.blocks) {
        out << csv_escape(b.key) << ",";
        for (std::size_t i = 0; i < b.members.size(); ++i)
            out << (i ? " " : "") << b.members[i];
        out << "\n";
    }
}

void write_edge_csv(const std::string& path, const std::vector<EdgeRow>& edges) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "u,v,weight\n";
    for (const auto& e : edges) out << e.u << "," << e.v << "," << e.weight << "\n";
}

}  // namespace progblock
