#include <cmath>
#include <unordered_set>

#include "doctest.h"
#include "progblock/synthgen.hpp"
#include "progblock/util.hpp"
#include "test_support.hpp"

using namespace progblock;
using namespace progblock::testing;

TEST_CASE("geometric points lie on the unit sphere") {
    GeometricModel m;
    m.n = 500;
    m.t = 3;
    m.alpha = 2.0;
    m.cluster_sizes.assign(50, 10);
    m.seed = 21;
    auto inst = generate_geometric(m);
    REQUIRE(inst.points.size() == 500);
    for (const auto& p : inst.points) {
        REQUIRE(p.size() == 4);  // S^t lives in R^(t+1)
        double norm = 0;
        for (double x : p) norm += x * x;
        CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-9);
    }
    CHECK(inst.truth.cluster_count() == 50);
    CHECK(inst.truth.match_count() == 50 * 45);
}

TEST_CASE("geometric blocks hold the center plus ceil(alpha ln n) neighbors") {
    GeometricModel m;
    m.n = 1000;
    m.t = 2;
    m.alpha = 2.0;
    m.cluster_sizes.assign(100, 10);
    m.seed = 5;
    auto inst = generate_geometric(m);
    // k = ceil(2 ln 1000) = 14, so each ball holds 15 records
    REQUIRE(inst.blocks.size() == 1000);
    for (const auto& b : inst.blocks.blocks) CHECK(b.members.size() == 15);
}

TEST_CASE("identical points make every ball the whole set") {
    std::vector<std::vector<double>> points(6, std::vector<double>{1.0, 0.0, 0.0});
    auto blocks = knn_ball_blocks(points, 2);
    for (const auto& b : blocks.blocks) CHECK(b.members.size() == 6);
}

TEST_CASE("geometric instance rejects bad parameters") {
    GeometricModel m;
    m.n = 1;
    m.cluster_sizes = {1};
    CHECK_THROWS(generate_geometric(m));
    m.n = 10;
    m.cluster_sizes = {4, 4};  // sums to 8, not 10
    CHECK_THROWS(generate_geometric(m));
}

TEST_CASE("expected candidate count beats the alpha (n-1) ln n / 2 floor") {
    double total = 0;
    const std::int32_t n = 500;
    const double alpha = 2.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GeometricModel m;
        m.n = n;
        m.t = 2;
        m.alpha = alpha;
        m.cluster_sizes.assign(50, 10);
        m.seed = seed;
        auto inst = generate_geometric(m);
        std::unordered_set<std::uint64_t> pairs;
        for (const auto& b : inst.blocks.blocks)
            for (std::size_t i = 0; i < b.members.size(); ++i)
                for (std::size_t j = i + 1; j < b.members.size(); ++j)
                    pairs.insert(pair_key(b.members[i], b.members[j]));
        total += static_cast<double>(pairs.size());
    }
    double mean = total / 20.0;
    double floor_bound = alpha * (n - 1) * std::log(n) / 2.0;
    CHECK(mean >= floor_bound);
    // sanity ceiling: every ball contributes at most C(k+1, 2) pairs
    int k = static_cast<int>(std::ceil(alpha * std::log(n)));
    CHECK(mean <= static_cast<double>(n) * (k + 1) * k / 2.0);
}

TEST_CASE("noisy model expectations match the closed forms") {
    NoisyEdgeModel m;
    m.n = 10000;
    m.theta = 0.5;
    m.beta = std::log(10000.0);
    m.beta_prime = m.beta;
    m.seed = 404;

    CHECK(m.mu_g() == doctest::Approx((1 - m.beta / m.n) * 0.75 + (m.beta / m.n) * 0.25));
    CHECK(m.mu_r() == doctest::Approx((1 - m.beta_prime / m.n) * 0.25 +
                                      (m.beta_prime / m.n) * 0.75));

    // Monte-Carlo means against mu_g / mu_r
    double sum_g = 0, sum_r = 0;
    int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        sum_g += m.similarity(2 * i, 2 * i + 1, true);
        sum_r += m.similarity(2 * i, 2 * i + 1, false);
    }
    CHECK(sum_g / trials == doctest::Approx(m.mu_g()).epsilon(0.02));
    CHECK(sum_r / trials == doctest::Approx(m.mu_r()).epsilon(0.02));
    CHECK(std::abs(sum_g / trials - m.mu_g()) < 0.01);
    CHECK(std::abs(sum_r / trials - m.mu_r()) < 0.01);
}

TEST_CASE("noisy similarities are deterministic per pair and stay in range") {
    NoisyEdgeModel m;
    m.n = 1000;
    m.theta = 0.4;
    m.beta = 0.0;  // matching draws always land in [theta, 1]
    m.beta_prime = 0.0;
    m.seed = 7;
    double sum = 0;
    for (int i = 0; i < 20000; ++i) {
        double s = m.similarity(i, i + 1, true);
        CHECK(s >= m.theta);
        CHECK(s <= 1.0);
        sum += s;
        CHECK(m.similarity(i, i + 1, true) == s);
        double r = m.similarity(i, i + 1, false);
        CHECK(r >= 0.0);
        CHECK(r < m.theta);
    }
    // with beta = 0 the matching mean is exactly (1+theta)/2
    CHECK(sum / 20000 == doctest::Approx((1 + m.theta) / 2).epsilon(0.01));
}

TEST_CASE("noisy instance wiring") {
    auto inst = generate_noisy_instance({.n = 200,
                                         .cluster_size = 10,
                                         .dirty_blocks = 50,
                                         .dirty_block_size = 5,
                                         .seed = 2});
    CHECK(inst.truth.cluster_count() == 20);
    CHECK(inst.blocks.size() == 20 + 50);
    // clean blocks are exactly the clusters
    for (std::int32_t c = 0; c < 20; ++c) {
        const auto& b = inst.blocks.blocks[c];
        CHECK(b.members.size() == 10);
        for (auto r : b.members) CHECK(inst.truth.cluster_of(r) == inst.truth.cluster_of(b.members[0]));
    }
    // the prior reproduces the model draws
    auto prior = inst.prior_fn();
    CHECK(prior(0, 1) == inst.model.similarity(0, 1, true));
    CHECK(prior(0, 11) == inst.model.similarity(0, 11, false));
}
