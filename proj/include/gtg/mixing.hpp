#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gtg/graph.hpp"

namespace gtg {

// Probability vector over the nodes evolving under the walk.
struct WalkState {
    std::vector<double> probs;
    std::int64_t t = 0;
};

WalkState point_mass(std::uint32_t n, std::uint32_t at);

// pi_k = deg(k) / 2|E|. Isolated vertices get pi = 0; the walk is undefined
// from them, which `isolated` flags.
struct Stationary {
    std::vector<double> probs;
    std::uint32_t isolated = 0;

    double min_positive() const;
};

Stationary stationary(const Graph& g);

// One lazy-walk step: out_j = laziness * s_j + (1-laziness) * sum over
// neighbors i of s_i / deg(i). Mass is conserved.
void step_into(const Graph& g, std::span<const double> in, std::span<double> out, double laziness);
WalkState step(const Graph& g, const WalkState& s, double laziness);

// Half the l1 distance; in [0, 1].
double variational_distance(std::span<const double> s, std::span<const double> pi);

// Total-variation distance to stationarity after 0..steps steps from a point
// mass at `start` (diagnostic; used by the monotonicity checks).
std::vector<double> tv_trace(const Graph& g, std::uint32_t start, double laziness, int steps);

// Smallest t with Delta_start(t) <= delta. TV distance to stationarity never
// increases under a stationary-preserving step, so the first crossing settles
// every later t as well. Throws when t_max is exceeded (message carries the
// last distance).
int mixing_time_from(const Graph& g, std::uint32_t start, double delta, double laziness,
                     int t_max);

// Worst-start mixing time. Exact mode scans every start (guarded by a node
// cap); sampled mode takes >= 64 distinct starts plus the minimum- and
// maximum-degree nodes and reports a lower estimate.
struct MixingTime {
    int tau = 0;
    bool exact = true;
    std::uint32_t starts = 0;
};

MixingTime mixing_time(const Graph& g, double delta, double laziness, bool exact,
                       int t_max = 1 << 22, std::uint64_t sample_seed = 1,
                       std::uint32_t sample_starts = 64, std::uint32_t exact_cap = 2000);

// Congestion upper bound rho * (ln(1/pi_min) + ln(1/delta)).
double canonical_bound(double rho, double pi_min, double delta);

// 1 - lambda_2 of the lazy walk, computed by deflated power iteration in the
// pi-weighted inner product on the half-lazy operator (nonnegative spectrum),
// then mapped to the requested laziness. Converged when the gap estimate is
// stable to `tol` relative over a trailing window; throws with the residual
// when the iteration cap is hit.
double spectral_gap(const Graph& g, double laziness, double tol = 1e-6,
                    std::uint64_t max_iter = 4'000'000);

}  // namespace gtg
