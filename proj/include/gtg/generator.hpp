#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gtg/graph.hpp"
#include "gtg/weights.hpp"

namespace gtg {

// Instance parameters. theta = c * n / ln(n); natural log throughout.
struct GtgConfig {
    std::uint32_t n = 0;
    int d = 2;
    double c = 1.0;
    WeightDistribution dist = WeightDistribution::exponential();
    double alpha = 0.5;
    std::uint64_t seed = 1;

    double theta() const;
};

// Samples n positions uniformly in [0,1)^d and weights by inverse transform,
// then applies the inclusive threshold rule to every pair. Positions and
// weights come from per-node streams derived from the seed, so the instance
// is reproducible and independent of construction order. Neighbor search is
// grid-bucketed and remains exact for arbitrarily heavy weight tails: each
// node scans the cells within its own reach radius ((w_i + w_max)/theta)^(1/d).
Graph generate_gtg(const GtgConfig& config);

// Plain geometric graph: edge iff toric distance <= r. Positions match
// generate_gtg for the same seed. Requires r in (0, sqrt(d)/2).
Graph generate_rgg(std::uint32_t n, int d, double r, std::uint64_t seed);

// All-pairs evaluation of the edge rule; the testing oracle for the grid
// search. Capped (default 5000 nodes) because it is quadratic.
std::vector<Graph::Edge> brute_force_edges(std::span<const double> positions,
                                           std::span<const double> weights, double theta, int d,
                                           std::uint32_t cap = 5000);

// Connectivity radius (ln(alpha n) / (alpha n * ball volume))^(1/d);
// requires alpha * n > 1.
double critical_radius(double n, double alpha, int d);

// Positions/weights sampling shared by the generators; exposed for tests
// and Monte Carlo helpers that need the raw draw.
void sample_instance(std::uint32_t n, int d, const WeightDistribution& dist, std::uint64_t seed,
                     std::vector<double>& positions, std::vector<double>& weights);

}  // namespace gtg
