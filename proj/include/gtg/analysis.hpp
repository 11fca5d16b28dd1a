#pragma once

#include <cstdint>
#include <vector>

#include "gtg/graph.hpp"
#include "gtg/weights.hpp"

namespace gtg {

struct ComponentLabeling {
    std::vector<std::uint32_t> label;  // per node, 0-based component id
    std::vector<std::uint32_t> sizes;  // per component

    std::uint32_t count() const { return static_cast<std::uint32_t>(sizes.size()); }
    bool connected() const { return sizes.size() == 1; }
};

// Breadth-first labeling of connected components.
ComponentLabeling connected_components(const Graph& g);

// Two-coloring check; the simple (non-lazy) walk does not converge on
// bipartite graphs.
bool is_bipartite(const Graph& g);

// Realized degree extremes against the predicted window
// [c1 ln n, c2 F^-1(1 - 1/(n omega)) ln n] with
// c1 = (mu Y_d / c)(1 - sqrt(2c/(mu Y_d))), c2 = 2 Y_d / c.
// c1 needs 2c < mu Y_d; otherwise only the upper endpoint is reported.
struct DegreeReport {
    std::uint32_t min_deg = 0;
    std::uint32_t max_deg = 0;
    double lower = 0.0;        // c1 ln n, NaN when c1 is undefined
    double upper = 0.0;        // c2 W2 ln n
    bool lower_defined = false;
    bool within = false;
};

DegreeReport degree_report(const Graph& g, const WeightDistribution& dist, double c, double omega);

// |E| / (n ln n).
double edge_count_ratio(const Graph& g);

// Nodes above / at-or-below the weight cutoff F^-1(1-alpha).
struct HighLowPartition {
    double cutoff = 0.0;
    std::vector<std::uint32_t> high;  // sorted node ids with w > cutoff
    std::vector<std::uint32_t> low;   // the complement
    std::vector<char> is_high;        // per-node flag
};

HighLowPartition high_low_partition(const Graph& g, double alpha, const WeightDistribution& dist);

// Per-cell counts of high and low nodes on the k^d grid, and the extremes
// normalized by ln n.
struct CubeOccupancy {
    int k = 1;
    std::vector<std::uint32_t> high_count;  // per cell, rank order
    std::vector<std::uint32_t> low_count;
    std::uint32_t min_high = 0, max_high = 0;
    std::uint32_t min_low = 0, max_low = 0;
    double min_high_norm = 0.0, max_high_norm = 0.0;  // counts / ln n
    double min_low_norm = 0.0, max_low_norm = 0.0;
};

CubeOccupancy cube_occupancy(const Graph& g, int k, const HighLowPartition& hl);

// Edge counts between the high-weight node sets of every face-adjacent cell
// pair, plus the exact completeness check: when the realized grid satisfies
// 2 F^-1(1-alpha) k^d / (d+3)^(d/2) >= theta, every such pair must be a
// complete bipartite connection.
struct AdjacentHighReport {
    int k = 1;
    std::uint64_t pair_count = 0;       // face-adjacent cell pairs examined
    std::uint64_t total_edges = 0;      // high-high edges across those pairs
    std::uint64_t min_edges = 0;        // min over pairs
    double min_edges_norm = 0.0;        // min / (ln n)^2
    bool complete = false;              // every high-high pair is an edge
    bool premise_holds = false;         // the realized-k guarantee inequality
    std::uint64_t missing_pairs = 0;    // non-adjacent high-high pairs found
};

AdjacentHighReport adjacent_cube_hh_edges(const Graph& g, int k, const HighLowPartition& hl,
                                          double alpha, const WeightDistribution& dist);

}  // namespace gtg
