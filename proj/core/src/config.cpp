#include "progblock/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

namespace progblock {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double d = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        bad("config: " + key + ": expected a number, got '" + value + "'");
    }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || p != value.data() + value.size())
        bad("config: " + key + ": expected an integer, got '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    bad("config: " + key + ": expected true/false, got '" + value + "'");
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

void PipelineConfig::validate() const {
    if (!(phi > 0.0 && phi <= 1.0)) bad("config: phi must be in (0,1]");
    if (pair_budget_m < 1) bad("config: pair_budget_M must be positive");
    if (hierarchy_depth_d < 1) bad("config: hierarchy_depth_d must be positive");
    if (gamma < 1) bad("config: gamma must be positive");
    if (top_k_per_record < 1) bad("config: top_k_per_record must be positive");
    if (!(oracle_error_rate >= 0.0 && oracle_error_rate < 1.0))
        bad("config: oracle_error_rate must be in [0,1)");
    if (qgram_q < 2) bad("config: qgram_q must be >= 2");
    if (window_w < 2) bad("config: window_w must be >= 2");
    if (!(canopy_threshold > 0.0 && canopy_threshold <= 1.0))
        bad("config: canopy_threshold must be in (0,1]");
    if (max_blocks_per_record < 2) bad("config: max_blocks_per_record must be >= 2");
    if (prior == PriorKind::noisy && !(theta > 0.0 && theta < 1.0))
        bad("config: theta must be in (0,1)");
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    auto dir = std::filesystem::path(path).parent_path();
    auto resolve = [&dir](const std::string& p) {
        if (p.empty()) return p;
        std::filesystem::path fp(p);
        return fp.is_absolute() ? p : (dir / fp).string();
    };

    PipelineConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));

        if (key == "bb_method") {
            if (value == "standard") cfg.bb_method = BbMethod::standard;
            else if (value == "qgram") cfg.bb_method = BbMethod::qgram;
            else if (value == "sorted_neighborhood") cfg.bb_method = BbMethod::sorted_neighborhood;
            else if (value == "canopy") cfg.bb_method = BbMethod::canopy;
            else bad("config: bb_method: unknown method '" + value + "'");
        } else if (key == "bc_init") {
            if (value == "tfidf") cfg.bc_init = BcInit::tfidf;
            else if (value == "uniform") cfg.bc_init = BcInit::uniform;
            else bad("config: bc_init: unknown init '" + value + "'");
        } else if (key == "cc_method") {
            if (value == "meta_blocking") cfg.cc_method = CcMethod::meta_blocking;
            else bad("config: cc_method: unknown method '" + value + "'");
        } else if (key == "er_method") {
            if (value == "edge") cfg.er_method = ErMethod::edge;
            else if (value == "node") cfg.er_method = ErMethod::node;
            else bad("config: er_method: unknown method '" + value + "'");
        } else if (key == "phi") {
            cfg.phi = parse_double(key, value);
        } else if (key == "pair_budget_M") {
            cfg.pair_budget_m = parse_int(key, value);
        } else if (key == "hierarchy_depth_d") {
            cfg.hierarchy_depth_d = static_cast<int>(parse_int(key, value));
        } else if (key == "gamma") {
            cfg.gamma = static_cast<int>(parse_int(key, value));
        } else if (key == "top_k_per_record") {
            cfg.top_k_per_record = static_cast<int>(parse_int(key, value));
        } else if (key == "oracle_error_rate") {
            cfg.oracle_error_rate = parse_double(key, value);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "qgram_q") {
            cfg.qgram_q = static_cast<int>(parse_int(key, value));
        } else if (key == "window_w") {
            cfg.window_w = static_cast<int>(parse_int(key, value));
        } else if (key == "canopy_threshold") {
            cfg.canopy_threshold = parse_double(key, value);
        } else if (key == "max_blocks_per_record") {
            cfg.max_blocks_per_record = static_cast<int>(parse_int(key, value));
        } else if (key == "oracle_majority_vote") {
            cfg.oracle_majority_vote = parse_bool(key, value);
        } else if (key == "node_progress_by_records") {
            cfg.node_progress_by_records = parse_bool(key, value);
        } else if (key == "dataset") {
            cfg.dataset = resolve(value);
        } else if (key == "format") {
            if (value == "csv") cfg.format = DatasetFormat::csv;
            else if (value == "jsonl") cfg.format = DatasetFormat::jsonl;
            else bad("config: format: expected csv or jsonl");
        } else if (key == "truth") {
            cfg.truth = resolve(value);
        } else if (key == "blocks_file") {
            cfg.blocks_file = resolve(value);
        } else if (key == "prior") {
            if (value == "jaccard") cfg.prior = PriorKind::jaccard;
            else if (value == "noisy") cfg.prior = PriorKind::noisy;
            else bad("config: prior: expected jaccard or noisy");
        } else if (key == "theta") {
            cfg.theta = parse_double(key, value);
        } else if (key == "beta") {
            cfg.beta = parse_double(key, value);
        } else if (key == "beta_prime") {
            cfg.beta_prime = parse_double(key, value);
        } else if (key == "prior_seed") {
            cfg.prior_seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

std::int64_t effective_pair_budget(const PipelineConfig& cfg, std::int32_t n) {
    if (n < 2) return cfg.pair_budget_m;
    double lg = std::log2(static_cast<double>(n));
    auto cap = static_cast<std::int64_t>(std::ceil(4.0 * n * lg * lg));
    return std::min(cfg.pair_budget_m, std::max<std::int64_t>(cap, 1));
}

std::int64_t er_progress_quota(const PipelineConfig& cfg, std::int32_t n) {
    if (cfg.node_progress_by_records)
        return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(cfg.phi * n)));
    double lg = std::ceil(std::log2(static_cast<double>(std::max(n, 2))));
    return std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::llround(cfg.phi * n * lg * lg)));
}

int max_rounds(const PipelineConfig& cfg) {
    return static_cast<int>(std::ceil(1.0 / cfg.phi));
}

int block_sample_bound(int gamma, std::int32_t n) {
    double lg = std::ceil(std::log2(static_cast<double>(std::max(n, 2))));
    return std::max(1, gamma * static_cast<int>(lg));
}

const char* to_string(BbMethod m) {
    switch (m) {
        case BbMethod::standard: return "standard";
        case BbMethod::qgram: return "qgram";
        case BbMethod::sorted_neighborhood: return "sorted_neighborhood";
        case BbMethod::canopy: return "canopy";
    }
    return "?";
}

const char* to_string(BcInit m) {
    return m == BcInit::tfidf ? "tfidf" : "uniform";
}

const char* to_string(ErMethod m) {
    return m == ErMethod::edge ? "edge" : "node";
}

}  // namespace progblock
