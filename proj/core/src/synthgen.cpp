#include "progblock/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "progblock/util.hpp"

namespace progblock {

RecordSet stub_records(std::int32_t n) {
    std::vector<Record> records(n);
    for (std::int32_t i = 0; i < n; ++i) {
        records[i].id = i;
        records[i].attributes = {{"id", "r" + std::to_string(i)}};
    }
    return RecordSet::from_records(std::move(records));
}

namespace {

// Unit-sphere point via normalized gaussians (Box-Muller on our own stream).
std::vector<double> random_sphere_point(int dims, SplitMix& rng) {
    std::vector<double> p(dims);
    for (int i = 0; i < dims; i += 2) {
        double u1 = rng.next_double();
        double u2 = rng.next_double();
        while (u1 <= 1e-300) u1 = rng.next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        p[i] = r * std::cos(2.0 * M_PI * u2);
        if (i + 1 < dims) p[i + 1] = r * std::sin(2.0 * M_PI * u2);
    }
    double norm = 0.0;
    for (double x : p) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-12) return random_sphere_point(dims, rng);
    for (double& x : p) x /= norm;
    return p;
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double t = a[i] - b[i];
        d += t * t;
    }
    return d;
}

}  // namespace

BlockCollection knn_ball_blocks(const std::vector<std::vector<double>>& points, int k) {
    std::int32_t n = static_cast<std::int32_t>(points.size());
    BlockCollection out;
    out.blocks.reserve(n);
    std::vector<double> dist(n);
    for (std::int32_t u = 0; u < n; ++u) {
        for (std::int32_t v = 0; v < n; ++v) dist[v] = sq_dist(points[u], points[v]);
        // Radius = distance of the k-th nearest other point; ties included.
        std::vector<double> others;
        others.reserve(n - 1);
        for (std::int32_t v = 0; v < n; ++v)
            if (v != u) others.push_back(dist[v]);
        int kk = std::min<int>(k, static_cast<int>(others.size()));
        std::nth_element(others.begin(), others.begin() + (kk - 1), others.end());
        double radius = others[kk - 1];

        Block b;
        b.id = u;
        b.key = "ball:" + std::to_string(u);
        for (std::int32_t v = 0; v < n; ++v)
            if (v == u || dist[v] <= radius + 1e-12) b.members.push_back(v);
        out.blocks.push_back(std::move(b));
    }
    out.finalize(n);
    return out;
}

GeometricInstance generate_geometric(const GeometricModel& m) {
    if (m.n < 2) throw std::invalid_argument("generate_geometric: n must be >= 2");
    if (m.t < 1) throw std::invalid_argument("generate_geometric: t must be >= 1");
    std::int64_t total = std::accumulate(m.cluster_sizes.begin(), m.cluster_sizes.end(),
                                         std::int64_t{0});
    if (total != m.n)
        throw std::invalid_argument("generate_geometric: cluster sizes must sum to n");

    GeometricInstance inst;
    inst.records = stub_records(m.n);

    std::vector<std::int32_t> labels(m.n);
    std::int32_t next = 0, cluster = 0;
    for (auto s : m.cluster_sizes) {
        for (std::int32_t i = 0; i < s; ++i) labels[next++] = cluster;
        ++cluster;
    }
    inst.truth = GroundTruth::from_labels(labels);

    SplitMix rng(mix64(m.seed, 0x9e0));
    int dims = m.t + 1;
    inst.points.resize(m.n);
    if (!m.clustered_placement) {
        for (std::int32_t i = 0; i < m.n; ++i) inst.points[i] = random_sphere_point(dims, rng);
    } else {
        // Benign case: members scatter tightly around a per-cluster center.
        std::vector<std::vector<double>> centers;
        centers.reserve(m.cluster_sizes.size());
        for (std::size_t c = 0; c < m.cluster_sizes.size(); ++c)
            centers.push_back(random_sphere_point(dims, rng));
        for (std::int32_t i = 0; i < m.n; ++i) {
            auto p = random_sphere_point(dims, rng);
            const auto& c = centers[labels[i]];
            double norm = 0.0;
            for (int d = 0; d < dims; ++d) {
                p[d] = c[d] + 0.05 * p[d];
                norm += p[d] * p[d];
            }
            norm = std::sqrt(norm);
            for (double& x : p) x /= norm;
            inst.points[i] = std::move(p);
        }
    }

    int k = static_cast<int>(std::ceil(m.alpha * std::log(static_cast<double>(m.n))));
    k = std::max(1, std::min<int>(k, m.n - 1));
    inst.blocks = knn_ball_blocks(inst.points, k);
    return inst;
}

double NoisyEdgeModel::similarity(std::int32_t u, std::int32_t v, bool is_match) const {
    double coin = pair_unit_draw(seed, u, v, 0xc01);
    double value = pair_unit_draw(seed, u, v, 0x7a1);
    if (is_match) {
        bool high = coin < 1.0 - beta / n;
        return high ? theta + value * (1.0 - theta) : value * theta;
    }
    bool low = coin < 1.0 - beta_prime / n;
    return low ? value * theta : theta + value * (1.0 - theta);
}

SimilarityStore::PriorFn NoisyInstance::prior_fn() const {
    auto labels = std::make_shared<std::vector<std::int32_t>>(truth.n());
    for (std::int32_t i = 0; i < truth.n(); ++i) (*labels)[i] = truth.cluster_of(i);
    NoisyEdgeModel m = model;
    return [m, labels](std::int32_t u, std::int32_t v) {
        return m.similarity(u, v, (*labels)[u] == (*labels)[v]);
    };
}

NoisyInstance generate_noisy_instance(const NoisyInstanceParams& p) {
    if (p.n < 2) throw std::invalid_argument("generate_noisy_instance: n must be >= 2");
    if (p.cluster_size < 1 || p.n % p.cluster_size != 0)
        throw std::invalid_argument("generate_noisy_instance: cluster_size must divide n");

    NoisyInstance inst;
    inst.records = stub_records(p.n);

    std::vector<std::int32_t> labels(p.n);
    for (std::int32_t i = 0; i < p.n; ++i) labels[i] = i / p.cluster_size;
    inst.truth = GroundTruth::from_labels(labels);

    inst.model.n = p.n;
    inst.model.theta = p.theta;
    double ln_n = std::log(static_cast<double>(p.n));
    inst.model.beta = p.beta > 0.0 ? p.beta : ln_n;
    inst.model.beta_prime = p.beta_prime > 0.0 ? p.beta_prime : ln_n;
    inst.model.seed = mix64(p.seed, 0x5e);

    BlockCollection blocks;
    std::int32_t clusters = p.n / p.cluster_size;
    for (std::int32_t c = 0; c < clusters; ++c) {
        Block b;
        b.key = "c" + std::to_string(c);
        for (std::int32_t i = 0; i < p.cluster_size; ++i)
            b.members.push_back(c * p.cluster_size + i);
        blocks.blocks.push_back(std::move(b));
    }
    SplitMix rng(mix64(p.seed, 0xd1));
    for (std::int32_t d = 0; d < p.dirty_blocks; ++d) {
        Block b;
        b.key = "d" + std::to_string(d);
        std::vector<std::int32_t> all(p.n);
        std::iota(all.begin(), all.end(), 0);
        b.members = sample_without_replacement(std::move(all),
                                               static_cast<std::size_t>(p.dirty_block_size), rng);
        blocks.blocks.push_back(std::move(b));
    }
    blocks.finalize(p.n);
    inst.blocks = std::move(blocks);
    return inst;
}

}  // namespace progblock
