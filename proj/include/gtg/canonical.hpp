#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtg/analysis.hpp"
#include "gtg/geometry.hpp"
#include "gtg/graph.hpp"
#include "gtg/weights.hpp"

namespace gtg {

// Scaffold path between grid cells: raise coordinate 0 from a to b by +1
// (mod k) steps, then coordinate 1, and so on. Always the +1 direction, even
// when the other way around the torus is shorter; length <= d(k-1).
std::vector<GridIndex> grid_path(const GridIndex& a, const GridIndex& b);

// Exhaustive maximum number of scaffold paths through any directed grid edge
// over all k^(2d) ordered cell pairs; bounded by k^(d+1). Throws when
// k^(2d) > 10^7 (use the analytic bound instead).
std::uint64_t grid_edge_load(int k, int d);

// Grid side for the path scaffold: ceil((n / (c' ln n))^(1/d)) with
// c' = 2/min(alpha, 1-alpha) unless overridden (c_prime <= 0 means default).
int grid_side(std::uint32_t n, int d, double alpha, double c_prime = 0.0);

// A cube holding low-weight nodes but no high-weight node; the scaffold
// cannot route through it. Callers may resample the instance or enlarge the
// cells.
class MissingHighNodeError : public std::runtime_error {
  public:
    MissingHighNodeError(std::uint64_t rank, const std::string& what)
        : std::runtime_error(what), cell_rank(rank) {}
    std::uint64_t cell_rank;
};

// Per-node cube ranks and the per-cell high-weight rosters on the k^d grid.
struct CubeIndex {
    int k = 1;
    std::vector<std::uint64_t> rank;                  // per node
    std::vector<std::vector<std::uint32_t>> high_in;  // per cell, sorted ids
};

CubeIndex index_cubes(const Graph& g, int k, const HighLowPartition& hl);

// Every low-weight node gets a high-weight representative from its own cube:
// per cube, both rosters are shuffled (stream derived from the seed) and the
// lows are dealt round-robin, so each high node represents at most
// ceil(|L|/|H|) lows. High nodes represent themselves. Throws
// MissingHighNodeError when a cube has lows but no highs.
struct RepresentativeAssignment {
    int k = 1;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> representative;  // per node; self for high nodes
};

RepresentativeAssignment assign_representatives(const Graph& g, const CubeIndex& cubes,
                                                const HighLowPartition& hl, std::uint64_t seed);

// One canonical path per ordered node pair: endpoints lifted to their
// representatives when low, interior nodes drawn uniformly from the high
// roster of each scaffold cell (per-pair streams, so the path is a pure
// function of (seed, u, v)). Non-adjacent interior choices are redrawn up to
// `resample_cap` times; fixed hops (representative edges, adjacent-cube
// endpoints) cannot be redrawn and fail the pair outright.
struct PathBuildOptions {
    bool exact = true;               // all n(n-1) ordered pairs
    std::uint64_t sample_pairs = 0;  // pair draws when exact == false
    std::uint64_t seed = 1;
    int resample_cap = 32;
    unsigned threads = 0;  // 0 = hardware default
};

// Per-edge aggregates over the path family. Indexed by the graph's
// undirected edge ids.
struct PathSystem {
    int k = 1;
    bool exact = true;
    std::uint64_t seed = 1;
    int resample_cap = 32;
    std::uint64_t pairs_requested = 0;
    std::uint64_t pairs_built = 0;
    std::uint64_t resamples = 0;  // interior redraws that were needed
    std::uint64_t failures = 0;   // pairs abandoned (premise violated)
    std::string first_failure;    // diagnostic for the first failed pair
    std::uint32_t max_len = 0;    // max |path|, bounded by d k + 2
    std::uint64_t total_len = 0;  // sum of |path| over built pairs

    std::vector<std::uint64_t> usage;   // Z_e: paths through edge e
    std::vector<double> sigma;          // sum of deg(u) deg(v)
    std::vector<double> weighted_len;   // sum of deg(u) deg(v) |path|

    RepresentativeAssignment reps;  // kept so the family can be regenerated
};

PathSystem build_paths(const Graph& g, const CubeIndex& cubes, const HighLowPartition& hl,
                       const RepresentativeAssignment& reps, const PathBuildOptions& opt);

// The canonical path for one ordered pair, as the node sequence u..v; empty
// when the pair could not be routed. Deterministic in (seed, u, v).
std::vector<std::uint32_t> canonical_path(const Graph& g, const CubeIndex& cubes,
                                          const HighLowPartition& hl,
                                          const RepresentativeAssignment& reps, std::uint64_t seed,
                                          std::uint32_t u, std::uint32_t v, int resample_cap = 32);

// Congestion: max over edges of (1/(2|E|)) * sum over paths through the edge
// of deg(u) deg(v) |path|. Exact when the system covered all ordered pairs.
double compute_rho(const Graph& g, const PathSystem& paths);

// Independent second pass over the same (regenerated) path family:
// usage/sigma again, congestion again, plus per-edge path counts broken down
// by the endpoint weight classes (B, A_1..A_M) of the partition.
struct EdgeClassStats {
    int classes = 1;                    // M + 1
    std::vector<std::uint64_t> usage;   // per edge
    std::vector<double> sigma;          // per edge
    std::vector<std::uint32_t> lambda;  // per edge: classes x classes counts
    double rho = 0.0;

    std::uint32_t lambda_at(std::uint32_t edge, int cls_u, int cls_v) const {
        return lambda[(static_cast<std::size_t>(edge) * classes + cls_u) * classes + cls_v];
    }
};

EdgeClassStats edge_stats(const Graph& g, const CubeIndex& cubes, const HighLowPartition& hl,
                          const PathSystem& paths, const WeightPartition& partition);

}  // namespace gtg
