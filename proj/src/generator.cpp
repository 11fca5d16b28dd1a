#include "gtg/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gtg/geometry.hpp"
#include "gtg/rng.hpp"

namespace gtg {

double GtgConfig::theta() const {
    if (n < 2) throw std::invalid_argument("gtg: need n >= 2");
    return c * n / std::log(static_cast<double>(n));
}

void sample_instance(std::uint32_t n, int d, const WeightDistribution& dist, std::uint64_t seed,
                     std::vector<double>& positions, std::vector<double>& weights) {
    positions.resize(static_cast<std::size_t>(n) * d);
    weights.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        SplitMix64 stream(mix64(seed, i));
        for (int c = 0; c < d; ++c) positions[static_cast<std::size_t>(i) * d + c] = stream.next_unit();
        weights[i] = dist.sample(stream);
    }
}

namespace {

// Toric grid bucketing of the nodes: cells[rank] lists the node ids in that
// cell. Cell side is kept >= the radius at which two mean-weight nodes
// connect, capped so the grid stays O(n) cells.
struct BucketGrid {
    int k = 1;
    int d = 2;
    std::vector<std::vector<std::uint32_t>> cells;

    BucketGrid(std::span<const double> positions, std::uint32_t n, int dim, double base_radius) {
        d = dim;
        const double cells_cap = std::pow(4.0 * std::max<std::uint32_t>(n, 1), 1.0 / d);
        double side = std::max(base_radius, 1e-9);
        k = std::max(1, static_cast<int>(std::min(std::floor(1.0 / side), cells_cap)));
        std::uint64_t total = 1;
        for (int i = 0; i < d; ++i) total *= static_cast<std::uint64_t>(k);
        cells.resize(total);
        std::vector<int> cell(d);
        for (std::uint32_t v = 0; v < n; ++v) {
            cube_of(positions.subspan(static_cast<std::size_t>(v) * d, d), k, cell);
            cells[cell_rank(cell, k)].push_back(v);
        }
    }
};

// Visits every cell within `span_cells` grid steps of `center` (torically),
// invoking fn(cell_rank) exactly once per distinct cell. When the window
// covers a full axis the whole axis is scanned once.
template <class Fn>
void for_cells_within(const std::vector<int>& center, int k, int span_cells, Fn&& fn) {
    const int d = static_cast<int>(center.size());
    const int width = std::min(2 * span_cells + 1, k);
    std::vector<int> idx(d, 0);
    std::vector<int> cell(d);
    while (true) {
        for (int i = 0; i < d; ++i) {
            int c = (width == k) ? idx[i] : (center[i] - span_cells + idx[i]) % k;
            if (c < 0) c += k;
            cell[i] = c;
        }
        fn(cell_rank(cell, k));
        int i = d - 1;
        while (i >= 0 && ++idx[i] == width) idx[i--] = 0;
        if (i < 0) break;
    }
}

std::vector<Graph::Edge> grid_edges(std::span<const double> positions,
                                    std::span<const double> weights, std::uint32_t n, int d,
                                    double theta, double base_radius) {
    BucketGrid grid(positions, n, d, base_radius);
    const int k = grid.k;
    const double w_max = n ? *std::max_element(weights.begin(), weights.end()) : 0.0;

    std::vector<Graph::Edge> edges;
    std::vector<int> center(d);
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto pi = positions.subspan(static_cast<std::size_t>(i) * d, d);
        // Any neighbor j of i satisfies r_ij <= ((w_i + w_max)/theta)^(1/d),
        // so scanning that far is exhaustive.
        const double reach = std::pow((weights[i] + w_max) / theta, 1.0 / d);
        const int span_cells = static_cast<int>(std::ceil(reach * k)) + 1;
        cube_of(pi, k, center);
        for_cells_within(center, k, span_cells, [&](std::uint64_t rank) {
            for (std::uint32_t j : grid.cells[rank]) {
                if (j <= i) continue;
                const double r = toric_distance(pi, positions.subspan(static_cast<std::size_t>(j) * d, d));
                if (edge_predicate(weights[i], weights[j], r, theta, d)) edges.push_back({i, j});
            }
        });
    }
    return edges;
}

}  // namespace

Graph generate_gtg(const GtgConfig& config) {
    if (config.n < 2) throw std::invalid_argument("generate_gtg: need n >= 2");
    if (config.d < 2) throw std::invalid_argument("generate_gtg: need d >= 2");
    if (!(config.c > 0.0)) throw std::invalid_argument("generate_gtg: need c > 0");
    const double theta = config.theta();

    std::vector<double> positions, weights;
    sample_instance(config.n, config.d, config.dist, config.seed, positions, weights);

    const double base_radius = std::pow(2.0 * config.dist.mean() / theta, 1.0 / config.d);
    auto edges = grid_edges(positions, weights, config.n, config.d, theta, base_radius);
    return Graph::from_parts(config.d, theta, config.seed, std::move(positions),
                             std::move(weights), std::move(edges));
}

Graph generate_rgg(std::uint32_t n, int d, double r, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_rgg: need n >= 1");
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument("generate_rgg: need a positive finite radius");
    // r >= sqrt(d)/2 exceeds the metric diameter and yields the complete graph.

    std::vector<double> positions, weights;
    sample_instance(n, d, WeightDistribution::constant(1.0), seed, positions, weights);

    // Unit weights with theta = 2/r^d make the threshold rule equivalent to
    // distance <= r, so the persisted instance stays self-consistent.
    const double theta = 2.0 / pow_int(r, d);
    auto edges = grid_edges(positions, weights, n, d, theta, r);
    return Graph::from_parts(d, theta, seed, std::move(positions), std::move(weights),
                             std::move(edges));
}

std::vector<Graph::Edge> brute_force_edges(std::span<const double> positions,
                                           std::span<const double> weights, double theta, int d,
                                           std::uint32_t cap) {
    const std::uint32_t n = static_cast<std::uint32_t>(weights.size());
    if (n > cap) throw std::invalid_argument("brute_force_edges: n exceeds the quadratic cap");
    std::vector<Graph::Edge> edges;
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto pi = positions.subspan(static_cast<std::size_t>(i) * d, d);
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const double r = toric_distance(pi, positions.subspan(static_cast<std::size_t>(j) * d, d));
            if (edge_predicate(weights[i], weights[j], r, theta, d)) edges.push_back({i, j});
        }
    }
    return edges;
}

double critical_radius(double n, double alpha, int d) {
    const double an = alpha * n;
    if (!(an > 1.0)) throw std::invalid_argument("critical_radius: need alpha*n > 1");
    return std::pow(std::log(an) / (an * unit_ball_volume(d)), 1.0 / d);
}

}  // namespace gtg
