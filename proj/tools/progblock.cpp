// progblock: progressive blocking for entity resolution.
//
//   progblock run    --config cfg [--trace out.jsonl] [--edges out.csv]
//   progblock blocks --dataset data.csv --method standard|qgram|sorted_neighborhood|canopy
//   progblock eval   --graph edges.csv --truth gt.csv
//   progblock synth  --model geometric|noisy --out dir/
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"

#include "progblock/block_building.hpp"
#include "progblock/dataset_io.hpp"
#include "progblock/evaluation.hpp"
#include "progblock/pipeline.hpp"
#include "progblock/synthgen.hpp"

using nlohmann::json;
using namespace progblock;

namespace {

json trace_to_json(const RoundTrace& t) {
    json layers = json::array();
    for (const auto& lc : t.layers)
        layers.push_back({{"level", lc.level}, {"blocks", lc.blocks}, {"active", lc.active}});
    json tops = json::array();
    for (const auto& tb : t.top_blocks)
        tops.push_back({{"key", tb.key}, {"p", tb.p}, {"u", tb.u}, {"score", tb.score}});
    return json{{"round", t.round},
                {"h_edges", t.h_edges},
                {"candidates_emitted", t.candidates_emitted},
                {"pairs_visited", t.pairs_visited},
                {"pair_recall", t.pair_recall},
                {"er_queries", t.er_queries},
                {"er_positives", t.er_positives},
                {"er_negatives", t.er_negatives},
                {"er_processed", t.er_processed},
                {"scoring_pairs", t.scoring_pairs},
                {"blocks_active", t.blocks_active},
                {"nonmatch_edges", t.nonmatch_edges},
                {"fscore", t.fscore},
                {"wall_ms", t.wall_ms},
                {"layers", layers},
                {"top_blocks", tops}};
}

int cmd_run(const std::string& config_path, const std::string& trace_path,
            const std::string& edges_path) {
    auto cfg = PipelineConfig::from_file(config_path);
    if (cfg.dataset.empty()) throw std::runtime_error("config: dataset is required");
    if (cfg.truth.empty()) throw std::runtime_error("config: truth is required");

    auto rs = load_dataset(cfg.dataset, cfg.format);
    auto gt = load_ground_truth(cfg.truth, rs.n());

    PipelineResult result;
    SimilarityStore::PriorFn prior;
    if (cfg.prior == PriorKind::noisy) {
        NoisyEdgeModel model;
        model.n = rs.n();
        model.theta = cfg.theta;
        double ln_n = std::log(static_cast<double>(rs.n()));
        model.beta = cfg.beta > 0.0 ? cfg.beta : ln_n;
        model.beta_prime = cfg.beta_prime > 0.0 ? cfg.beta_prime : ln_n;
        model.seed = mix64(cfg.prior_seed, 0x5e);
        auto labels = std::make_shared<std::vector<std::int32_t>>(rs.n());
        for (std::int32_t i = 0; i < rs.n(); ++i) (*labels)[i] = gt.cluster_of(i);
        prior = [model, labels](std::int32_t u, std::int32_t v) {
            return model.similarity(u, v, (*labels)[u] == (*labels)[v]);
        };
    }

    if (!cfg.blocks_file.empty() || prior) {
        BlockCollection base = cfg.blocks_file.empty()
                                   ? build_base_blocks(rs, cfg)
                                   : load_block_collection(cfg.blocks_file, rs.n());
        result = run_progressive_blocking(rs, gt, cfg, base, prior);
    } else {
        result = run_progressive_blocking(rs, gt, cfg);
    }

    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw std::runtime_error("cannot write " + trace_path);
        for (const auto& t : result.trace) out << trace_to_json(t).dump() << "\n";
    }
    if (!edges_path.empty()) {
        std::vector<EdgeRow> rows;
        rows.reserve(result.graph.edge_count());
        for (const auto& e : result.graph.edges()) rows.push_back({e.u, e.v, e.weight});
        write_edge_csv(edges_path, rows);
    }

    const auto& last = result.trace.back();
    double fscore_partial = clustering_metrics(result.state, gt).fscore;
    // blocking done; resolve the final candidate set to the end
    auto oracle = make_pipeline_oracle(cfg, gt);
    complete_er(result.graph, oracle, result.state, cfg.er_method == ErMethod::node);
    auto metrics = clustering_metrics(result.state, gt);
    json summary{{"rounds", result.rounds},
                 {"converged", result.converged},
                 {"h_edges", result.graph.edge_count()},
                 {"pair_recall", last.pair_recall},
                 {"er_queries", result.state.queries_spent},
                 {"fscore_partial", fscore_partial},
                 {"precision", metrics.precision},
                 {"recall", metrics.recall},
                 {"fscore", metrics.fscore}};
    std::cout << summary.dump(2) << "\n";
    return result.converged ? 0 : 2;
}

int cmd_blocks(const std::string& dataset, const std::string& method, int q, int w,
               double threshold, std::uint64_t seed) {
    auto rs = load_dataset(dataset, format_from_path(dataset));
    BlockCollection blocks;
    if (method == "standard") blocks = standard_blocking(rs);
    else if (method == "qgram") blocks = qgram_blocking(rs, q);
    else if (method == "sorted_neighborhood") blocks = sorted_neighborhood(rs, w);
    else if (method == "canopy") blocks = canopy_clustering(rs, threshold, seed);
    else throw std::runtime_error("unknown method " + method);

    std::map<std::size_t, std::int64_t> histogram;
    for (const auto& b : blocks.blocks) histogram[b.members.size()]++;
    std::cout << "size,count\n";
    for (auto [size, count] : histogram) std::cout << size << "," << count << "\n";
    std::cerr << blocks.blocks.size() << " blocks over " << rs.n() << " records\n";
    return 0;
}

int cmd_eval(const std::string& graph_path, const std::string& truth_path) {
    // The truth file defines the record universe here.
    std::ifstream probe(truth_path);
    if (!probe) throw std::runtime_error("cannot open " + truth_path);
    std::string line;
    std::int64_t max_id = -1;
    std::size_t lineno = 0;
    while (std::getline(probe, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        try {
            max_id = std::max<std::int64_t>(max_id, std::stoll(line.substr(0, comma)));
        } catch (...) {
            if (lineno > 1) throw std::runtime_error(truth_path + ": bad record id at line " +
                                                     std::to_string(lineno));
        }
    }
    auto n = static_cast<std::int32_t>(max_id + 1);
    auto gt = load_ground_truth(truth_path, n);

    std::ifstream in(graph_path);
    if (!in) throw std::runtime_error("cannot open " + graph_path);
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.rfind("u,", 0) == 0) continue;
        std::int32_t u, v;
        if (std::sscanf(line.c_str(), "%d,%d", &u, &v) != 2)
            throw std::runtime_error(graph_path + ":" + std::to_string(lineno) + ": expected u,v[,w]");
        edges.emplace_back(u, v);
    }

    json out{{"pair_recall", pair_recall(edges, gt)},
             {"candidates", edges.size()},
             {"truth_pairs", gt.match_count()}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_synth(const std::string& model, const std::string& out_dir, std::int32_t n,
              double alpha, int t, std::int32_t cluster_size, bool clustered,
              std::int32_t dirty_blocks, std::int32_t dirty_size, double theta,
              std::uint64_t seed) {
    std::filesystem::create_directories(out_dir);
    auto path = [&](const char* name) { return (std::filesystem::path(out_dir) / name).string(); };

    if (model == "geometric") {
        GeometricModel m;
        m.n = n;
        m.t = t;
        m.alpha = alpha;
        m.seed = seed;
        m.clustered_placement = clustered;
        std::int32_t full = n / cluster_size;
        for (std::int32_t c = 0; c < full; ++c) m.cluster_sizes.push_back(cluster_size);
        if (n % cluster_size) m.cluster_sizes.push_back(n % cluster_size);
        auto inst = generate_geometric(m);
        write_dataset_csv(path("dataset.csv"), inst.records);
        write_ground_truth(path("truth.csv"), inst.truth);
        write_block_collection(path("blocks.csv"), inst.blocks);
    } else if (model == "noisy") {
        NoisyInstanceParams p;
        p.n = n;
        p.cluster_size = cluster_size;
        p.dirty_blocks = dirty_blocks;
        p.dirty_block_size = dirty_size;
        p.theta = theta;
        p.seed = seed;
        auto inst = generate_noisy_instance(p);
        write_dataset_csv(path("dataset.csv"), inst.records);
        write_ground_truth(path("truth.csv"), inst.truth);
        write_block_collection(path("blocks.csv"), inst.blocks);
        std::ofstream cfg(path("run.cfg"));
        cfg << "dataset=dataset.csv\ntruth=truth.csv\nblocks_file=blocks.csv\n"
            << "prior=noisy\ntheta=" << theta << "\nbeta=" << inst.model.beta
            << "\nbeta_prime=" << inst.model.beta_prime << "\nprior_seed=" << seed
            << "\nphi=0.05\npair_budget_M=30000\nseed=" << seed << "\n";
    } else {
        throw std::runtime_error("unknown model " + model);
    }
    std::cerr << "wrote " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"progressive blocking for entity resolution"};
    app.require_subcommand(1);

    std::string config_path, trace_path, edges_path;
    auto* run = app.add_subcommand("run", "run the progressive blocking pipeline");
    run->add_option("--config", config_path, "key=value config file")->required();
    run->add_option("--trace", trace_path, "jsonl trace output, one object per round");
    run->add_option("--edges", edges_path, "final edge list csv");

    std::string dataset, method = "standard";
    int q = 3, w = 3;
    double threshold = 0.3;
    std::uint64_t seed = 1;
    auto* blocks = app.add_subcommand("blocks", "dump a block-size histogram");
    blocks->add_option("--dataset", dataset, "dataset csv/jsonl")->required();
    blocks->add_option("--method", method, "standard|qgram|sorted_neighborhood|canopy");
    blocks->add_option("--q", q, "q-gram size");
    blocks->add_option("--window", w, "sorted-neighborhood window");
    blocks->add_option("--threshold", threshold, "canopy loose threshold");
    blocks->add_option("--seed", seed, "canopy seed");

    std::string graph_path, truth_path;
    auto* eval = app.add_subcommand("eval", "score an edge list against a truth file");
    eval->add_option("--graph", graph_path, "edge csv u,v[,weight]")->required();
    eval->add_option("--truth", truth_path, "two-column truth csv")->required();

    std::string model = "noisy", out_dir;
    std::int32_t n = 2000, cluster_size = 20, dirty_blocks = 1000, dirty_size = 6;
    double alpha = 2.0, theta = 0.5;
    int t = 2;
    bool clustered = false;
    auto* synth = app.add_subcommand("synth", "generate a synthetic instance");
    synth->add_option("--model", model, "geometric|noisy");
    synth->add_option("--out", out_dir, "output directory")->required();
    synth->add_option("--n", n, "record count");
    synth->add_option("--alpha", alpha, "geometric ball volume factor");
    synth->add_option("--t", t, "sphere dimension");
    synth->add_option("--cluster-size", cluster_size, "records per entity");
    synth->add_flag("--clustered-placement", clustered, "co-locate clusters on the sphere");
    synth->add_option("--dirty-blocks", dirty_blocks, "noisy model: random block count");
    synth->add_option("--dirty-size", dirty_size, "noisy model: random block size");
    synth->add_option("--theta", theta, "noisy model threshold");
    synth->add_option("--seed", seed, "generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, trace_path, edges_path);
        if (blocks->parsed()) return cmd_blocks(dataset, method, q, w, threshold, seed);
        if (eval->parsed()) return cmd_eval(graph_path, truth_path);
        if (synth->parsed())
            return cmd_synth(model, out_dir, n, alpha, t, cluster_size, clustered,
                             dirty_blocks, dirty_size, theta, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
