#include "gtg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gtg/geometry.hpp"

namespace gtg {

ComponentLabeling connected_components(const Graph& g) {
    const std::uint32_t n = g.node_count();
    ComponentLabeling out;
    out.label.assign(n, std::numeric_limits<std::uint32_t>::max());
    std::vector<std::uint32_t> queue;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (out.label[root] != std::numeric_limits<std::uint32_t>::max()) continue;
        const std::uint32_t comp = out.count();
        out.sizes.push_back(0);
        queue.assign(1, root);
        out.label[root] = comp;
        while (!queue.empty()) {
            const std::uint32_t v = queue.back();
            queue.pop_back();
            ++out.sizes[comp];
            for (std::uint32_t u : g.neighbors(v)) {
                if (out.label[u] == std::numeric_limits<std::uint32_t>::max()) {
                    out.label[u] = comp;
                    queue.push_back(u);
                }
            }
        }
    }
    return out;
}

bool is_bipartite(const Graph& g) {
    const std::uint32_t n = g.node_count();
    std::vector<signed char> color(n, -1);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (color[root] != -1) continue;
        color[root] = 0;
        queue.assign(1, root);
        while (!queue.empty()) {
            const std::uint32_t v = queue.back();
            queue.pop_back();
            for (std::uint32_t u : g.neighbors(v)) {
                if (color[u] == -1) {
                    color[u] = static_cast<signed char>(1 - color[v]);
                    queue.push_back(u);
                } else if (color[u] == color[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

DegreeReport degree_report(const Graph& g, const WeightDistribution& dist, double c, double omega) {
    const std::uint32_t n = g.node_count();
    DegreeReport rep;
    rep.min_deg = std::numeric_limits<std::uint32_t>::max();
    for (std::uint32_t v = 0; v < n; ++v) {
        rep.min_deg = std::min(rep.min_deg, g.degree(v));
        rep.max_deg = std::max(rep.max_deg, g.degree(v));
    }
    if (n == 0) rep.min_deg = 0;

    const double log_n = std::log(static_cast<double>(n));
    const double mu_ball = dist.mean() * unit_ball_volume(g.dim());
    const double c2 = 2.0 * unit_ball_volume(g.dim()) / c;
    rep.upper = c2 * dist.quantile_tail(1.0 / (n * omega)) * log_n;
    rep.lower_defined = 2.0 * c < mu_ball;
    if (rep.lower_defined) {
        const double c1 = (mu_ball / c) * (1.0 - std::sqrt(2.0 * c / mu_ball));
        rep.lower = c1 * log_n;
    } else {
        rep.lower = std::numeric_limits<double>::quiet_NaN();
    }
    rep.within = (!rep.lower_defined || rep.min_deg >= rep.lower) && rep.max_deg <= rep.upper;
    return rep;
}

double edge_count_ratio(const Graph& g) {
    const double n = g.node_count();
    if (n < 3) throw std::invalid_argument("edge_count_ratio: need n >= 3");
    return static_cast<double>(g.edge_count()) / (n * std::log(n));
}

HighLowPartition high_low_partition(const Graph& g, double alpha, const WeightDistribution& dist) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("high_low_partition: alpha in (0,1)");
    HighLowPartition hl;
    hl.cutoff = dist.quantile_tail(alpha);
    hl.is_high.assign(g.node_count(), 0);
    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
        if (g.weight(v) > hl.cutoff) {
            hl.is_high[v] = 1;
            hl.high.push_back(v);
        } else {
            hl.low.push_back(v);
        }
    }
    return hl;
}

CubeOccupancy cube_occupancy(const Graph& g, int k, const HighLowPartition& hl) {
    if (k < 1) throw std::invalid_argument("cube_occupancy: k >= 1");
    CubeOccupancy occ;
    occ.k = k;
    std::uint64_t total = 1;
    for (int i = 0; i < g.dim(); ++i) total *= static_cast<std::uint64_t>(k);
    occ.high_count.assign(total, 0);
    occ.low_count.assign(total, 0);
    std::vector<int> cell(g.dim());
    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
        cube_of(g.position(v), k, cell);
        const std::uint64_t rank = cell_rank(cell, k);
        if (hl.is_high[v])
            ++occ.high_count[rank];
        else
            ++occ.low_count[rank];
    }
    const auto [hmin, hmax] = std::minmax_element(occ.high_count.begin(), occ.high_count.end());
    const auto [lmin, lmax] = std::minmax_element(occ.low_count.begin(), occ.low_count.end());
    occ.min_high = *hmin;
    occ.max_high = *hmax;
    occ.min_low = *lmin;
    occ.max_low = *lmax;
    const double log_n = std::log(std::max<double>(g.node_count(), 2.0));
    occ.min_high_norm = occ.min_high / log_n;
    occ.max_high_norm = occ.max_high / log_n;
    occ.min_low_norm = occ.min_low / log_n;
    occ.max_low_norm = occ.max_low / log_n;
    return occ;
}

AdjacentHighReport adjacent_cube_hh_edges(const Graph& g, int k, const HighLowPartition& hl,
                                          double alpha, const WeightDistribution& dist) {
    AdjacentHighReport rep;
    rep.k = k;
    const int d = g.dim();
    if (k < 2) return rep;  // single cell (or wraparound self-adjacency): no pairs

    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::uint64_t>(k);

    std::vector<std::vector<std::uint32_t>> high_in(total);
    std::vector<int> cell(d);
    for (std::uint32_t v : hl.high) {
        cube_of(g.position(v), k, cell);
        high_in[cell_rank(cell, k)].push_back(v);
    }

    rep.premise_holds =
        2.0 * dist.quantile_tail(alpha) * std::pow(static_cast<double>(k), d) /
            std::pow(d + 3.0, 0.5 * d) >=
        g.theta();

    rep.min_edges = std::numeric_limits<std::uint64_t>::max();
    std::vector<int> nbr(d);
    std::vector<int> idx(d, 0);
    // Enumerate each face-adjacent unordered pair once: cell and its +1
    // neighbor per axis; for k == 2 the +1 step from entry 1 would repeat the
    // pair, so only entry 0 contributes.
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        std::uint64_t rest = rank;
        for (int i = d - 1; i >= 0; --i) {
            cell[i] = static_cast<int>(rest % k);
            rest /= k;
        }
        for (int axis = 0; axis < d; ++axis) {
            if (k == 2 && cell[axis] == 1) continue;
            nbr = cell;
            nbr[axis] = (cell[axis] + 1) % k;
            const auto& a = high_in[rank];
            const auto& b = high_in[cell_rank(nbr, k)];
            ++rep.pair_count;
            std::uint64_t edges_here = 0;
            for (std::uint32_t u : a)
                for (std::uint32_t v : b)
                    if (g.has_edge(u, v)) ++edges_here;
            rep.total_edges += edges_here;
            rep.missing_pairs += static_cast<std::uint64_t>(a.size()) * b.size() - edges_here;
            rep.min_edges = std::min(rep.min_edges, edges_here);
        }
    }
    if (rep.pair_count == 0) rep.min_edges = 0;
    rep.complete = rep.missing_pairs == 0;
    const double log_n = std::log(std::max<double>(g.node_count(), 2.0));
    rep.min_edges_norm = static_cast<double>(rep.min_edges) / (log_n * log_n);
    return rep;
}

}  // namespace gtg
