#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "gtg/analysis.hpp"
#include "gtg/canonical.hpp"
#include "gtg/generator.hpp"
#include "gtg/geometry.hpp"
#include "gtg/graph.hpp"
#include "gtg/rng.hpp"
#include "gtg/weights.hpp"

using namespace gtg;

namespace {

// Synthetic fixture: positions on a diagonal, unit weights, explicit edges.
Graph synthetic(std::uint32_t n, std::vector<Graph::Edge> edges, int d = 2) {
    std::vector<double> pos(static_cast<std::size_t>(n) * d);
    std::vector<double> w(n, 1.0);
    for (std::uint32_t v = 0; v < n; ++v)
        for (int c = 0; c < d; ++c) pos[static_cast<std::size_t>(v) * d + c] = (v + 0.5) / n;
    return Graph::from_parts(d, 1.0, 0, std::move(pos), std::move(w), std::move(edges));
}

// Independent component oracle.
struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::uint32_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

std::uint32_t unionfind_components(const Graph& g) {
    UnionFind uf(g.node_count());
    for (const auto& [i, j] : g.edges()) uf.unite(i, j);
    std::uint32_t count = 0;
    for (std::uint32_t v = 0; v < g.node_count(); ++v)
        if (uf.find(v) == v) ++count;
    return count;
}

}  // namespace

TEST_CASE("component labeling on hand-built graphs") {
    // complete K4
    const Graph k4 = synthetic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(connected_components(k4).count() == 1);
    CHECK(connected_components(k4).connected());

    // empty edge set
    const Graph empty5 = synthetic(5, {});
    CHECK(connected_components(empty5).count() == 5);

    // two disjoint triangles
    const Graph two_tri = synthetic(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
    const auto comps = connected_components(two_tri);
    CHECK(comps.count() == 2);
    CHECK(comps.sizes[0] == 3);
    CHECK(comps.sizes[1] == 3);
    CHECK(comps.label[0] == comps.label[1]);
    CHECK(comps.label[0] != comps.label[3]);
}

TEST_CASE("component labeling agrees with union-find on random instances") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        GtgConfig cfg;
        cfg.n = 400;
        cfg.c = 2.0;  // sparse enough that some instances fragment
        cfg.dist = WeightDistribution::exponential();
        cfg.seed = seed;
        const Graph g = generate_gtg(cfg);
        CHECK(connected_components(g).count() == unionfind_components(g));
    }
}

TEST_CASE("bipartiteness check") {
    CHECK(is_bipartite(synthetic(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})));       // 4-cycle
    CHECK_FALSE(is_bipartite(synthetic(3, {{0, 1}, {1, 2}, {0, 2}})));         // triangle
    CHECK(is_bipartite(synthetic(5, {{0, 1}, {2, 3}})));                       // forest
}

TEST_CASE("degree interval constants") {
    // d=2, mu=1, c=0.05: c1 = (pi/c)(1 - sqrt(2c/pi)), c2 = 2 pi / c
    GtgConfig cfg;
    cfg.n = 200;
    cfg.c = 0.05;
    cfg.dist = WeightDistribution::exponential();
    cfg.seed = 9;
    const Graph g = generate_gtg(cfg);
    const auto rep = degree_report(g, cfg.dist, cfg.c, omega_default(cfg.n));
    const double pi = 3.14159265358979323846;
    const double c1 = (pi / 0.05) * (1.0 - std::sqrt(0.1 / pi));
    CHECK(c1 == doctest::Approx(51.6225).epsilon(1e-4));
    CHECK(rep.lower == doctest::Approx(c1 * std::log(200.0)).epsilon(1e-12));
    const double c2 = 2.0 * pi / 0.05;
    CHECK(c2 == doctest::Approx(125.6637).epsilon(1e-4));
    CHECK(rep.lower_defined);

    // 2c >= mu * ball volume: lower endpoint undefined
    const auto degenerate = degree_report(g, cfg.dist, /*c=*/2.0, 2.0);
    CHECK_FALSE(degenerate.lower_defined);
}

TEST_CASE("degrees of constant-weight graphs concentrate") {
    GtgConfig cfg;
    cfg.n = 2000;
    cfg.c = 1.0;
    cfg.dist = WeightDistribution::constant(1.0);
    cfg.seed = 5;
    const Graph g = generate_gtg(cfg);
    const auto rep = degree_report(g, cfg.dist, cfg.c, omega_default(cfg.n));
    CHECK(static_cast<double>(rep.max_deg) / rep.min_deg < 3.0);
}

TEST_CASE("conditional mean degree matches the binomial model") {
    // Average degree of a fixed-weight node over an ensemble tracks
    // (n-1) * ballvol * (w + mu) / theta.
    const std::uint32_t n = 400;
    const int d = 2;
    const double c = 2.0, w_fixed = 1.0;
    const auto dist = WeightDistribution::exponential();
    const double theta = c * n / std::log(static_cast<double>(n));
    const int reps = 150;
    double sum_deg = 0.0;
    for (int trial = 0; trial < reps; ++trial) {
        std::vector<double> pos, w;
        sample_instance(n, d, dist, 1000 + trial, pos, w);
        w[0] = w_fixed;
        const auto edges = brute_force_edges(pos, w, theta, d);
        std::uint32_t deg0 = 0;
        for (const auto& [i, j] : edges) deg0 += (i == 0 || j == 0);
        sum_deg += deg0;
    }
    const double expected = (n - 1) * unit_ball_volume(d) * (w_fixed + dist.mean()) / theta;
    CHECK(std::fabs(sum_deg / reps - expected) <= 0.06 * expected);
}

TEST_CASE("edge count ratio") {
    const Graph tri = synthetic(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(edge_count_ratio(tri) == doctest::Approx(3.0 / (3.0 * std::log(3.0))).epsilon(1e-12));
    const Graph empty4 = synthetic(4, {});
    CHECK(edge_count_ratio(empty4) == 0.0);
    CHECK_THROWS(edge_count_ratio(synthetic(2, {})));
}

TEST_CASE("high/low split") {
    const auto dist = WeightDistribution::exponential();
    GtgConfig cfg;
    cfg.n = 3000;
    cfg.c = 1.0;
    cfg.dist = dist;
    const double alpha = 1.0 / std::exp(1.0);

    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        cfg.seed = seed;
        const Graph g = generate_gtg(cfg);
        const auto hl = high_low_partition(g, alpha, dist);
        if (seed == 1) CHECK(hl.cutoff == doctest::Approx(1.0).epsilon(1e-12));  // -ln(1/e)
        CHECK(hl.high.size() + hl.low.size() == g.node_count());
        for (std::uint32_t v : hl.high) CHECK(g.weight(v) > hl.cutoff);
        for (std::uint32_t v : hl.low) CHECK(g.weight(v) <= hl.cutoff);
        // binomial concentration with a small safety pad
        const double sigma = std::sqrt(cfg.n * alpha * (1.0 - alpha));
        CHECK(std::fabs(static_cast<double>(hl.high.size()) - alpha * cfg.n) <= 3.0 * sigma + 10.0);
    }
}

TEST_CASE("cube occupancy bookkeeping") {
    GtgConfig cfg;
    cfg.n = 2000;
    cfg.c = 1.0;
    cfg.dist = WeightDistribution::exponential();
    cfg.seed = 17;
    const Graph g = generate_gtg(cfg);
    const auto hl = high_low_partition(g, 0.5, cfg.dist);

    // k = 1: the single cube holds everything
    const auto all_in_one = cube_occupancy(g, 1, hl);
    CHECK(all_in_one.high_count[0] == hl.high.size());
    CHECK(all_in_one.low_count[0] == hl.low.size());

    const int k = grid_side(cfg.n, 2, 0.5);
    const auto occ = cube_occupancy(g, k, hl);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < occ.high_count.size(); ++i)
        total += occ.high_count[i] + occ.low_count[i];
    CHECK(total == g.node_count());
    CHECK(occ.min_high_norm > 0.0);
    CHECK(occ.min_low_norm > 0.0);
    // expected per-cube mass n/k^d split alpha : 1-alpha
    const double expect_high = 0.5 * cfg.n / (static_cast<double>(k) * k);
    CHECK(occ.max_high >= expect_high * 0.5);
    CHECK(occ.min_high <= expect_high * 1.5);
}

TEST_CASE("high-high adjacency across neighboring cubes") {
    const auto dist = WeightDistribution::exponential();
    GtgConfig cfg;
    cfg.n = 2000;
    cfg.d = 2;
    cfg.alpha = 0.5;
    cfg.c = admissible_c(dist, 2);
    cfg.dist = dist;
    cfg.seed = 4;
    const Graph g = generate_gtg(cfg);
    const auto hl = high_low_partition(g, cfg.alpha, dist);
    const int k = grid_side(cfg.n, 2, cfg.alpha);
    const auto rep = adjacent_cube_hh_edges(g, k, hl, cfg.alpha, dist);
    CHECK(rep.pair_count == 2ull * k * k);
    CHECK(rep.premise_holds);  // guaranteed at alpha = 1/2 by the grid choice
    CHECK(rep.complete);
    CHECK(rep.missing_pairs == 0);
    CHECK(rep.min_edges_norm > 0.0);

    // k = 1 degenerates to an empty report
    const auto none = adjacent_cube_hh_edges(g, 1, hl, cfg.alpha, dist);
    CHECK(none.pair_count == 0);
    CHECK(none.min_edges == 0);
}

TEST_CASE("min degree stays above half the predicted lower endpoint") {
    const auto dist = WeightDistribution::exponential();
    GtgConfig cfg;
    cfg.n = 10000;
    cfg.c = 1.0;
    cfg.dist = dist;
    int hits = 0;
    const int trials = 10;
    for (std::uint64_t seed = 1; seed <= trials; ++seed) {
        cfg.seed = seed;
        const Graph g = generate_gtg(cfg);
        const auto rep = degree_report(g, dist, cfg.c, omega_default(cfg.n));
        REQUIRE(rep.lower_defined);
        if (rep.min_deg >= 0.5 * rep.lower) ++hits;
    }
    CHECK(hits >= 0.9 * trials);
}
