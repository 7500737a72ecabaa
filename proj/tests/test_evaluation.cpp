#include <queue>

#include "doctest.h"
#include "progblock/evaluation.hpp"
#include "test_support.hpp"

using namespace progblock;
using namespace progblock::testing;

namespace {

GroundTruth truth_from(std::vector<std::int32_t> labels) {
    return GroundTruth::from_labels(std::move(labels));
}

// Independent recall oracle: BFS transitive closure over true matching edges.
double brute_force_pair_recall(const std::vector<std::pair<std::int32_t, std::int32_t>>& edges,
                               const GroundTruth& gt) {
    if (gt.match_count() == 0) return 1.0;
    std::int32_t n = gt.n();
    std::vector<std::vector<std::int32_t>> adj(n);
    for (auto [u, v] : edges) {
        if (!gt.same(u, v)) continue;
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::uint64_t reachable_pairs = 0;
    std::vector<char> seen(n, 0);
    for (std::int32_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::int32_t> comp;
        std::queue<std::int32_t> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            auto x = q.front();
            q.pop();
            comp.push_back(x);
            for (auto y : adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    q.push(y);
                }
        }
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (std::size_t j = i + 1; j < comp.size(); ++j)
                if (gt.same(comp[i], comp[j])) ++reachable_pairs;
    }
    return static_cast<double>(reachable_pairs) / static_cast<double>(gt.match_count());
}

}  // namespace

TEST_CASE("pair recall basics") {
    auto gt = truth_from({0, 0, 0, 1});
    // edges equal to the truth pairs -> 1
    CHECK(pair_recall({{0, 1}, {0, 2}, {1, 2}}, gt) == doctest::Approx(1.0));
    // chain: (0,2) is inferred through connectivity
    CHECK(pair_recall({{0, 1}, {1, 2}}, gt) == doctest::Approx(1.0));
    // no edges -> 0
    CHECK(pair_recall(std::vector<std::pair<std::int32_t, std::int32_t>>{}, gt) ==
          doctest::Approx(0.0));
    // empty truth -> defined as 1
    auto singles = truth_from({0, 1, 2});
    CHECK(pair_recall(std::vector<std::pair<std::int32_t, std::int32_t>>{}, singles) == 1.0);
}

TEST_CASE("pair recall counts component-internal pairs only") {
    // cluster {0,1,2,3} with a single true edge: 1 of 6 pairs recoverable
    auto gt = truth_from({0, 0, 0, 0});
    CHECK(pair_recall({{0, 1}}, gt) == doctest::Approx(1.0 / 6.0));
    // non-matching edges never help
    CHECK(pair_recall({{0, 1}}, truth_from({0, 0, 1, 1})) == doctest::Approx(0.5));
}

TEST_CASE("pair recall is monotone under edge additions") {
    SplitMix rng(9);
    std::vector<std::int32_t> labels(60);
    for (auto& l : labels) l = static_cast<std::int32_t>(rng.next_below(12));
    auto gt = truth_from(labels);
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    double last = pair_recall(edges, gt);
    for (int step = 0; step < 120; ++step) {
        auto u = static_cast<std::int32_t>(rng.next_below(60));
        auto v = static_cast<std::int32_t>(rng.next_below(60));
        if (u == v) continue;
        edges.emplace_back(u, v);
        double now = pair_recall(edges, gt);
        CHECK(now >= last - 1e-12);
        last = now;
    }
}

TEST_CASE("pair recall agrees with the brute-force closure") {
    SplitMix rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        std::int32_t n = 50 + static_cast<std::int32_t>(rng.next_below(150));
        std::vector<std::int32_t> labels(n);
        for (auto& l : labels) l = static_cast<std::int32_t>(rng.next_below(n / 4 + 1));
        auto gt = truth_from(labels);
        std::vector<std::pair<std::int32_t, std::int32_t>> edges;
        int m = static_cast<int>(rng.next_below(3 * n));
        for (int e = 0; e < m; ++e) {
            auto u = static_cast<std::int32_t>(rng.next_below(n));
            auto v = static_cast<std::int32_t>(rng.next_below(n));
            if (u != v) edges.emplace_back(u, v);
        }
        CHECK(pair_recall(edges, gt) ==
              doctest::Approx(brute_force_pair_recall(edges, gt)).epsilon(1e-12));
    }
}

TEST_CASE("clustering metrics") {
    auto gt = truth_from({0, 0, 1, 1});

    // perfect clustering
    auto perfect = clustering_metrics(std::vector<std::int32_t>{5, 5, 9, 9}, gt);
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK(perfect.fscore == 1.0);

    // all singletons: recall 0, empty-prediction precision 1, F 0
    auto single = clustering_metrics(std::vector<std::int32_t>{0, 1, 2, 3}, gt);
    CHECK(single.precision == 1.0);
    CHECK(single.recall == 0.0);
    CHECK(single.fscore == 0.0);

    // one wrong merge of the two 2-clusters: 6 predicted pairs, 2 correct
    auto merged = clustering_metrics(std::vector<std::int32_t>{7, 7, 7, 7}, gt);
    CHECK(merged.precision == doctest::Approx(2.0 / 6.0));
    CHECK(merged.recall == 1.0);
    CHECK(merged.fscore == doctest::Approx(2 * (2.0 / 6.0) / (2.0 / 6.0 + 1.0)));
}
