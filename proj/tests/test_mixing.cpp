#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtg/analysis.hpp"
#include "gtg/generator.hpp"
#include "gtg/graph.hpp"
#include "gtg/mixing.hpp"
#include "gtg/weights.hpp"

using namespace gtg;

namespace {

Graph synthetic(std::uint32_t n, std::vector<Graph::Edge> edges, int d = 2) {
    std::vector<double> pos(static_cast<std::size_t>(n) * d);
    std::vector<double> w(n, 1.0);
    for (std::uint32_t v = 0; v < n; ++v)
        for (int c = 0; c < d; ++c) pos[static_cast<std::size_t>(v) * d + c] = (v + 0.5) / n;
    return Graph::from_parts(d, 1.0, 0, std::move(pos), std::move(w), std::move(edges));
}

Graph triangle() { return synthetic(3, {{0, 1}, {0, 2}, {1, 2}}); }
Graph k2() { return synthetic(2, {{0, 1}}); }
Graph path3() { return synthetic(3, {{0, 1}, {1, 2}}); }
Graph star4() { return synthetic(4, {{0, 1}, {0, 2}, {0, 3}}); }
Graph cycle(std::uint32_t n) {
    std::vector<Graph::Edge> e;
    for (std::uint32_t v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
    e.push_back({0, n - 1});
    return synthetic(n, std::move(e));
}
Graph complete(std::uint32_t n) {
    std::vector<Graph::Edge> e;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) e.push_back({i, j});
    return synthetic(n, std::move(e));
}

// Dense matrix-power oracle for the walk.
std::vector<std::vector<double>> dense_matrix(const Graph& g, double lz) {
    const std::uint32_t n = g.node_count();
    std::vector<std::vector<double>> P(n, std::vector<double>(n, 0.0));
    for (std::uint32_t i = 0; i < n; ++i) {
        P[i][i] = lz;
        for (std::uint32_t j : g.neighbors(i)) P[i][j] += (1.0 - lz) / g.degree(i);
    }
    return P;
}

std::vector<double> dense_evolve(const std::vector<std::vector<double>>& P,
                                 std::vector<double> s, int steps) {
    const std::size_t n = s.size();
    std::vector<double> next(n);
    for (int t = 0; t < steps; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) next[j] += s[i] * P[i][j];
        s = next;
    }
    return s;
}

}  // namespace

TEST_CASE("stationary distribution closed forms") {
    const auto tri = stationary(triangle());
    for (double p : tri.probs) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const auto p3 = stationary(path3());
    CHECK(p3.probs[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p3.probs[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p3.probs[2] == doctest::Approx(0.25).epsilon(1e-15));

    const auto st = stationary(star4());
    CHECK(st.probs[0] == doctest::Approx(0.5).epsilon(1e-15));
    for (int leaf = 1; leaf <= 3; ++leaf)
        CHECK(st.probs[leaf] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

    const Graph lonely = synthetic(3, {{0, 1}});
    const auto iso = stationary(lonely);
    CHECK(iso.isolated == 1);
    CHECK(iso.probs[2] == 0.0);
    CHECK(iso.min_positive() == doctest::Approx(0.5));
}

TEST_CASE("step operator") {
    const Graph tri = triangle();
    const WalkState s0 = point_mass(3, 0);

    const WalkState held = step(tri, s0, 1.0);
    CHECK(held.probs == s0.probs);
    CHECK(held.t == 1);

    const WalkState moved = step(tri, s0, 0.0);
    CHECK(moved.probs[0] == 0.0);
    CHECK(moved.probs[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(moved.probs[2] == doctest::Approx(0.5).epsilon(1e-15));

    // stationarity is a fixed point at any laziness
    const auto pi = stationary(tri).probs;
    for (double lz : {0.0, 0.3, 0.5, 0.9}) {
        WalkState s{pi, 0};
        const WalkState next = step(tri, s, lz);
        for (std::uint32_t v = 0; v < 3; ++v) CHECK(std::fabs(next.probs[v] - pi[v]) <= 1e-12);
    }
}

TEST_CASE("mass conservation across many steps") {
    GtgConfig cfg;
    cfg.n = 500;
    cfg.c = 1.0;
    cfg.dist = WeightDistribution::exponential();
    cfg.seed = 2;
    const Graph g = generate_gtg(cfg);
    WalkState s = point_mass(g.node_count(), 0);
    for (int t = 0; t < 200; ++t) {
        s = step(g, s, 0.5);
        double mass = 0.0;
        for (double p : s.probs) mass += p;
        CHECK(std::fabs(mass - 1.0) <= 1e-12);
    }
}

TEST_CASE("variational distance") {
    const std::vector<double> uniform{1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK(variational_distance(uniform, uniform) == 0.0);
    const std::vector<double> point{1.0, 0.0, 0.0};
    CHECK(variational_distance(point, uniform) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    const std::vector<double> a{1.0, 0.0}, b{0.0, 1.0};
    CHECK(variational_distance(a, b) == 1.0);
    CHECK_THROWS(variational_distance(a, uniform));
}

TEST_CASE("mixing time: two-state lazy chain") {
    const Graph g = k2();
    // Delta(0) = 1/2; one lazy-half step reaches stationarity exactly.
    const auto trace = tv_trace(g, 0, 0.5, 3);
    CHECK(trace[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(trace[1] <= 1e-15);
    CHECK(mixing_time_from(g, 0, 0.25, 0.5, 100) == 1);
    CHECK(mixing_time_from(g, 0, 0.75, 0.5, 100) == 0);  // already within delta
}

TEST_CASE("mixing time against the dense oracle on small graphs") {
    std::mt19937_64 rng(0xFEED);
    for (int trial = 0; trial < 12; ++trial) {
        const std::uint32_t n = 4 + rng() % 5;  // 4..8 nodes
        std::vector<Graph::Edge> edges;
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j)
                if (rng() % 3 != 0) edges.push_back({i, j});
        const Graph g = synthetic(n, std::move(edges));
        if (!connected_components(g).connected() || g.edge_count() == 0) continue;

        // distribution evolution matches matrix powers
        const auto P = dense_matrix(g, 0.5);
        WalkState s = point_mass(n, 0);
        for (int t = 1; t <= 40; ++t) {
            s = step(g, s, 0.5);
            const auto oracle = dense_evolve(P, point_mass(n, 0).probs, t);
            for (std::uint32_t v = 0; v < n; ++v) CHECK(std::fabs(s.probs[v] - oracle[v]) <= 1e-10);
        }

        // tau from the oracle: first t with TV <= delta under matrix powers
        const double delta = 0.05;
        const auto pi = stationary(g).probs;
        int oracle_tau = -1;
        for (int t = 0; t <= 500 && oracle_tau < 0; ++t) {
            const auto dist_t = dense_evolve(P, point_mass(n, 0).probs, t);
            if (variational_distance(dist_t, pi) <= delta) oracle_tau = t;
        }
        REQUIRE(oracle_tau >= 0);
        CHECK(mixing_time_from(g, 0, delta, 0.5, 1000) == oracle_tau);
    }
}

TEST_CASE("mixing time of the 4-cycle against matrix powers") {
    const Graph g = cycle(4);
    const auto P = dense_matrix(g, 0.5);
    const auto pi = stationary(g).probs;
    int oracle_tau = -1;
    for (int t = 0; t <= 200 && oracle_tau < 0; ++t)
        if (variational_distance(dense_evolve(P, point_mass(4, 0).probs, t), pi) <= 0.05)
            oracle_tau = t;
    CHECK(mixing_time_from(g, 0, 0.05, 0.5, 1000) == oracle_tau);
}

TEST_CASE("lazy TV distance never increases") {
    GtgConfig cfg;
    cfg.n = 300;
    cfg.c = 1.0;
    cfg.dist = WeightDistribution::exponential();
    cfg.seed = 8;
    const Graph g = generate_gtg(cfg);
    const auto trace = tv_trace(g, 5, 0.5, 400);
    for (std::size_t t = 1; t < trace.size(); ++t) CHECK(trace[t] <= trace[t - 1] + 1e-12);
}

TEST_CASE("worst-start mixing time") {
    const Graph g = cycle(9);
    // vertex-transitive: every start gives the same tau
    const int tau0 = mixing_time_from(g, 0, 0.1, 0.5, 10000);
    const auto exact = mixing_time(g, 0.1, 0.5, true);
    CHECK(exact.exact);
    CHECK(exact.tau == tau0);
    // sampling every node must agree with the exact scan
    const auto sampled = mixing_time(g, 0.1, 0.5, false, 10000, 3, 9);
    CHECK(sampled.tau == exact.tau);

    CHECK(mixing_time(k2(), 0.25, 0.5, true).tau == 1);

    const Graph disconnected = synthetic(4, {{0, 1}, {2, 3}});
    CHECK_THROWS(mixing_time(disconnected, 0.1, 0.5, true));
}

TEST_CASE("congestion bound arithmetic") {
    CHECK(canonical_bound(1.0, 0.5, 0.5) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(canonical_bound(4.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0) ==
          doctest::Approx((4.0 / 3.0) * 2.0 * std::log(3.0)).epsilon(1e-15));
    // delta -> 1: the delta term vanishes
    CHECK(canonical_bound(2.0, 0.25, 1.0 - 1e-12) ==
          doctest::Approx(2.0 * std::log(4.0)).epsilon(1e-9));
    CHECK_THROWS(canonical_bound(0.0, 0.5, 0.5));
}

TEST_CASE("spectral gap closed forms") {
    // Lazy two-state chain: eigenvalues 1 and 0, gap 1 (the K_n closed form
    // at n = 2 gives the same value).
    CHECK(spectral_gap(k2(), 0.5) == doctest::Approx(1.0).epsilon(1e-6));

    // K_n: simple-walk lambda_2 = -1/(n-1); lazy-half lambda_2 = (1 - 1/(n-1))/2.
    for (std::uint32_t n : {5u, 9u}) {
        const Graph g = complete(n);
        const double l2 = -1.0 / (n - 1.0);
        CHECK(spectral_gap(g, 0.0) == doctest::Approx(1.0 - l2).epsilon(1e-6));
        CHECK(spectral_gap(g, 0.5) == doctest::Approx(1.0 - 0.5 * (1.0 + l2)).epsilon(1e-6));
    }

    // cycle: lambda_2 = cos(2 pi / n)
    const std::uint32_t n = 12;
    const double l2 = std::cos(2.0 * 3.14159265358979323846 / n);
    CHECK(spectral_gap(cycle(n), 0.5) == doctest::Approx(0.5 * (1.0 - l2)).epsilon(1e-5));

    CHECK_THROWS(spectral_gap(synthetic(4, {{0, 1}, {2, 3}}), 0.5));
}

TEST_CASE("gap lies in (0,1] for lazy chains on generated instances") {
    GtgConfig cfg;
    cfg.n = 400;
    cfg.c = 1.0;
    cfg.dist = WeightDistribution::exponential();
    for (std::uint64_t seed : {1ull, 5ull, 9ull}) {
        cfg.seed = seed;
        const Graph g = generate_gtg(cfg);
        if (!connected_components(g).connected()) continue;
        const double gap = spectral_gap(g, 0.5, 1e-6);
        CHECK(gap > 0.0);
        CHECK(gap <= 1.0 + 1e-9);
    }
}

TEST_CASE("reversibility: stationary flow is symmetric") {
    GtgConfig cfg;
    cfg.n = 300;
    cfg.c = 1.0;
    cfg.dist = WeightDistribution::pareto(3);
    cfg.seed = 4;
    const Graph g = generate_gtg(cfg);
    const auto pi = stationary(g).probs;
    const double one_over_2e = 1.0 / (2.0 * static_cast<double>(g.edge_count()));
    for (const auto& [i, j] : g.edges()) {
        // integer identity: deg_i * (2E * deg_j) == deg_j * (2E * deg_i)
        const unsigned long long lhs =
            static_cast<unsigned long long>(g.degree(i)) * (2ull * g.edge_count() * g.degree(j));
        const unsigned long long rhs =
            static_cast<unsigned long long>(g.degree(j)) * (2ull * g.edge_count() * g.degree(i));
        CHECK(lhs == rhs);
        // floating point realization agrees to roundoff
        const double flow_ij = pi[i] / g.degree(i);
        const double flow_ji = pi[j] / g.degree(j);
        CHECK(std::fabs(flow_ij - flow_ji) <= 4e-16 * one_over_2e / one_over_2e * flow_ij + 1e-18);
    }
}

TEST_CASE("relaxation-time sandwich on generated instances") {
    GtgConfig cfg;
    cfg.n = 600;
    cfg.c = 1.0;
    cfg.dist = WeightDistribution::exponential();
    for (std::uint64_t seed : {3ull, 6ull}) {
        cfg.seed = seed;
        const Graph g = generate_gtg(cfg);
        if (!connected_components(g).connected()) continue;
        const double delta = 1.0 / g.node_count();
        const auto mt = mixing_time(g, delta, 0.5, true);
        const double gap = spectral_gap(g, 0.5, 1e-6);
        const double pi_min = stationary(g).min_positive();
        const double upper =
            (1.0 / gap) * (0.5 * std::log(1.0 / pi_min) + std::log(static_cast<double>(g.node_count()))) +
            1.0;
        CHECK(mt.tau <= upper * (1.0 + 1e-6));
    }
}
