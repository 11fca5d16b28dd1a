#include "gtg/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gtg/parallel.hpp"
#include "gtg/rng.hpp"

namespace gtg {

std::vector<GridIndex> grid_path(const GridIndex& a, const GridIndex& b) {
    if (a.k != b.k || a.cell.size() != b.cell.size())
        throw std::invalid_argument("grid_path: incompatible grids");
    std::vector<GridIndex> path{a};
    GridIndex cur = a;
    for (std::size_t axis = 0; axis < cur.cell.size(); ++axis) {
        while (cur.cell[axis] != b.cell[axis]) {
            cur.cell[axis] = (cur.cell[axis] + 1) % cur.k;
            path.push_back(cur);
        }
    }
    return path;
}

std::uint64_t grid_edge_load(int k, int d) {
    if (k < 1 || d < 1) throw std::invalid_argument("grid_edge_load: k, d >= 1");
    double pairs = std::pow(static_cast<double>(k), 2 * d);
    if (pairs > 1e7) throw std::invalid_argument("grid_edge_load: k^(2d) exceeds the enumeration cap");
    std::uint64_t cells = 1;
    for (int i = 0; i < d; ++i) cells *= static_cast<std::uint64_t>(k);

    // load per directed grid edge (cell, axis): the +1 step out of cell
    std::vector<std::uint64_t> load(cells * static_cast<std::uint64_t>(d), 0);
    std::vector<int> a(d), b(d), cur(d);
    for (std::uint64_t ra = 0; ra < cells; ++ra) {
        std::uint64_t rest = ra;
        for (int i = d - 1; i >= 0; --i) {
            a[i] = static_cast<int>(rest % k);
            rest /= k;
        }
        for (std::uint64_t rb = 0; rb < cells; ++rb) {
            rest = rb;
            for (int i = d - 1; i >= 0; --i) {
                b[i] = static_cast<int>(rest % k);
                rest /= k;
            }
            cur = a;
            for (int axis = 0; axis < d; ++axis) {
                while (cur[axis] != b[axis]) {
                    ++load[cell_rank(cur, k) * d + axis];
                    cur[axis] = (cur[axis] + 1) % k;
                }
            }
        }
    }
    return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
}

int grid_side(std::uint32_t n, int d, double alpha, double c_prime) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("grid_side: alpha in (0,1)");
    if (c_prime <= 0.0) c_prime = 2.0 / std::min(alpha, 1.0 - alpha);
    const double log_n = std::log(std::max<double>(n, 3.0));
    const double k = std::ceil(std::pow(n / (c_prime * log_n), 1.0 / d));
    return std::max(1, static_cast<int>(k));
}

CubeIndex index_cubes(const Graph& g, int k, const HighLowPartition& hl) {
    CubeIndex ci;
    ci.k = k;
    std::uint64_t cells = 1;
    for (int i = 0; i < g.dim(); ++i) cells *= static_cast<std::uint64_t>(k);
    ci.rank.resize(g.node_count());
    ci.high_in.resize(cells);
    std::vector<int> cell(g.dim());
    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
        cube_of(g.position(v), k, cell);
        ci.rank[v] = cell_rank(cell, k);
        if (hl.is_high[v]) ci.high_in[ci.rank[v]].push_back(v);
    }
    return ci;
}

RepresentativeAssignment assign_representatives(const Graph& g, const CubeIndex& cubes,
                                                const HighLowPartition& hl, std::uint64_t seed) {
    RepresentativeAssignment out;
    out.k = cubes.k;
    out.seed = seed;
    out.representative.resize(g.node_count());
    for (std::uint32_t v : hl.high) out.representative[v] = v;

    std::vector<std::vector<std::uint32_t>> low_in(cubes.high_in.size());
    for (std::uint32_t v : hl.low) low_in[cubes.rank[v]].push_back(v);

    for (std::uint64_t rank = 0; rank < low_in.size(); ++rank) {
        auto& lows = low_in[rank];
        if (lows.empty()) continue;
        std::vector<std::uint32_t> highs = cubes.high_in[rank];
        if (highs.empty()) {
            std::ostringstream os;
            os << "cube " << rank << " holds " << lows.size()
               << " low-weight nodes but no high-weight node";
            throw MissingHighNodeError(rank, os.str());
        }
        SplitMix64 stream(mix64(seed, rank));
        for (std::size_t i = highs.size(); i > 1; --i)
            std::swap(highs[i - 1], highs[stream.next_below(i)]);
        for (std::size_t i = lows.size(); i > 1; --i)
            std::swap(lows[i - 1], lows[stream.next_below(i)]);
        for (std::size_t j = 0; j < lows.size(); ++j)
            out.representative[lows[j]] = highs[j % highs.size()];
    }
    return out;
}

namespace {

struct PairTally {
    std::uint64_t pairs_built = 0;
    std::uint64_t resamples = 0;
    std::uint64_t failures = 0;
    std::string first_failure;
    std::uint32_t max_len = 0;
    std::uint64_t total_len = 0;
    std::vector<std::uint64_t> usage;
    std::vector<double> sigma;
    std::vector<double> weighted_len;
};

// Cell-rank sequence of the scaffold path between the cubes of u and v.
void scaffold_cells(std::uint64_t ru, std::uint64_t rv, int k, int d,
                    std::vector<std::uint64_t>& out) {
    out.clear();
    std::vector<int> cur(d), to(d);
    std::uint64_t rest = ru;
    for (int i = d - 1; i >= 0; --i) {
        cur[i] = static_cast<int>(rest % k);
        rest /= k;
    }
    rest = rv;
    for (int i = d - 1; i >= 0; --i) {
        to[i] = static_cast<int>(rest % k);
        rest /= k;
    }
    out.push_back(ru);
    for (int axis = 0; axis < d; ++axis) {
        while (cur[axis] != to[axis]) {
            cur[axis] = (cur[axis] + 1) % k;
            out.push_back(cell_rank(cur, k));
        }
    }
}

// Builds the canonical path for the ordered pair (u, v) into `nodes`.
// Returns true on success; on failure fills `why`. `resamples` counts
// interior redraws. The path depends only on (pair_seed, u, v).
bool path_for_pair(const Graph& g, const CubeIndex& cubes, const HighLowPartition& hl,
                   const RepresentativeAssignment& reps, std::uint64_t pair_seed, std::uint32_t u,
                   std::uint32_t v, int resample_cap, std::vector<std::uint32_t>& nodes,
                   std::vector<std::uint64_t>& cells, std::uint64_t& resamples, std::string* why) {
    const auto fail = [&](const std::string& msg) {
        if (why) {
            std::ostringstream os;
            os << "pair (" << u << "," << v << "): " << msg;
            *why = os.str();
        }
        return false;
    };

    scaffold_cells(cubes.rank[u], cubes.rank[v], cubes.k, g.dim(), cells);
    const std::size_t t = cells.size() - 1;

    const std::uint32_t x0 = hl.is_high[u] ? u : reps.representative[u];
    const std::uint32_t xt = hl.is_high[v] ? v : reps.representative[v];

    nodes.clear();
    nodes.push_back(u);
    if (x0 != u) {
        if (!g.has_edge(u, x0)) return fail("node is not adjacent to its representative");
        nodes.push_back(x0);
    }

    if (t >= 1) {
        SplitMix64 stream(mix64(pair_seed, u, v));
        for (std::size_t i = 1; i < t; ++i) {
            const auto& roster = cubes.high_in[cells[i]];
            if (roster.empty()) return fail("scaffold cube has no high-weight node");
            const std::uint32_t prev = nodes.back();
            bool placed = false;
            for (int attempt = 0; attempt <= resample_cap; ++attempt) {
                const std::uint32_t cand = roster[stream.next_below(roster.size())];
                const bool ok = g.has_edge(prev, cand) && (i + 1 < t || g.has_edge(cand, xt));
                if (attempt > 0) ++resamples;
                if (ok) {
                    nodes.push_back(cand);
                    placed = true;
                    break;
                }
            }
            if (!placed) return fail("no adjacent high-weight interior node after redraws");
        }
        if (!g.has_edge(nodes.back(), xt)) return fail("adjacent-cube high-weight hop is missing");
        nodes.push_back(xt);
    } else if (xt != nodes.back()) {
        if (!g.has_edge(nodes.back(), xt)) return fail("same-cube high-weight hop is missing");
        nodes.push_back(xt);
    }

    if (v != nodes.back()) {
        if (!g.has_edge(nodes.back(), v)) return fail("node is not adjacent to its representative");
        nodes.push_back(v);
    }
    return true;
}

inline void decode_pair(std::uint64_t p, std::uint32_t n, std::uint32_t& u, std::uint32_t& v) {
    u = static_cast<std::uint32_t>(p / (n - 1));
    std::uint32_t r = static_cast<std::uint32_t>(p % (n - 1));
    v = r + (r >= u ? 1 : 0);
}

inline void sampled_pair(std::uint64_t seed, std::uint64_t p, std::uint32_t n, std::uint32_t& u,
                         std::uint32_t& v) {
    SplitMix64 stream(mix64(seed, 0xA11CEull, p));
    u = static_cast<std::uint32_t>(stream.next_below(n));
    std::uint32_t r = static_cast<std::uint32_t>(stream.next_below(n - 1));
    v = r + (r >= u ? 1 : 0);
}

}  // namespace

PathSystem build_paths(const Graph& g, const CubeIndex& cubes, const HighLowPartition& hl,
                       const RepresentativeAssignment& reps, const PathBuildOptions& opt) {
    const std::uint32_t n = g.node_count();
    if (n < 2) throw std::invalid_argument("build_paths: need n >= 2");

    PathSystem sys;
    sys.k = cubes.k;
    sys.exact = opt.exact;
    sys.seed = opt.seed;
    sys.resample_cap = opt.resample_cap;
    sys.reps = reps;
    sys.pairs_requested =
        opt.exact ? static_cast<std::uint64_t>(n) * (n - 1) : opt.sample_pairs;
    sys.usage.assign(g.edge_count(), 0);
    sys.sigma.assign(g.edge_count(), 0.0);
    sys.weighted_len.assign(g.edge_count(), 0.0);

    const unsigned hw = opt.threads ? opt.threads : std::thread::hardware_concurrency();
    const unsigned chunks = std::max(1u, std::min<unsigned>(hw ? hw : 1, 16));
    std::vector<PairTally> tallies(chunks);
    for (auto& t : tallies) {
        t.usage.assign(g.edge_count(), 0);
        t.sigma.assign(g.edge_count(), 0.0);
        t.weighted_len.assign(g.edge_count(), 0.0);
    }

    const std::uint64_t total = sys.pairs_requested;
    const std::uint64_t per_chunk = (total + chunks - 1) / chunks;
    parallel_for_chunks(chunks, [&](std::size_t cb, std::size_t ce) {
        std::vector<std::uint32_t> nodes;
        std::vector<std::uint64_t> cells;
        for (std::size_t chunk = cb; chunk < ce; ++chunk) {
            PairTally& tally = tallies[chunk];
            const std::uint64_t begin = chunk * per_chunk;
            const std::uint64_t end = std::min<std::uint64_t>(total, begin + per_chunk);
            for (std::uint64_t p = begin; p < end; ++p) {
                std::uint32_t u, v;
                if (opt.exact)
                    decode_pair(p, n, u, v);
                else
                    sampled_pair(opt.seed, p, n, u, v);
                std::string why;
                std::uint64_t redraws = 0;
                if (!path_for_pair(g, cubes, hl, reps, opt.seed, u, v, opt.resample_cap, nodes,
                                   cells, redraws, tally.failures == 0 ? &why : nullptr)) {
                    tally.resamples += redraws;
                    if (tally.failures == 0) tally.first_failure = why;
                    ++tally.failures;
                    continue;
                }
                tally.resamples += redraws;
                ++tally.pairs_built;
                const std::uint32_t len = static_cast<std::uint32_t>(nodes.size() - 1);
                tally.max_len = std::max(tally.max_len, len);
                tally.total_len += len;
                const double dd =
                    static_cast<double>(g.degree(u)) * static_cast<double>(g.degree(v));
                for (std::uint32_t h = 0; h + 1 < nodes.size(); ++h) {
                    const std::int64_t e = g.edge_index(nodes[h], nodes[h + 1]);
                    tally.usage[e] += 1;
                    tally.sigma[e] += dd;
                    tally.weighted_len[e] += dd * len;
                }
            }
        }
    }, chunks);

    for (const auto& t : tallies) {
        sys.pairs_built += t.pairs_built;
        sys.resamples += t.resamples;
        if (sys.failures == 0 && t.failures > 0) sys.first_failure = t.first_failure;
        sys.failures += t.failures;
        sys.max_len = std::max(sys.max_len, t.max_len);
        sys.total_len += t.total_len;
        for (std::size_t e = 0; e < sys.usage.size(); ++e) {
            sys.usage[e] += t.usage[e];
            sys.sigma[e] += t.sigma[e];
            sys.weighted_len[e] += t.weighted_len[e];
        }
    }
    return sys;
}

std::vector<std::uint32_t> canonical_path(const Graph& g, const CubeIndex& cubes,
                                          const HighLowPartition& hl,
                                          const RepresentativeAssignment& reps, std::uint64_t seed,
                                          std::uint32_t u, std::uint32_t v, int resample_cap) {
    std::vector<std::uint32_t> nodes;
    std::vector<std::uint64_t> cells;
    std::uint64_t redraws = 0;
    if (u == v) return {};
    if (!path_for_pair(g, cubes, hl, reps, seed, u, v, resample_cap, nodes, cells, redraws,
                       nullptr))
        return {};
    return nodes;
}

double compute_rho(const Graph& g, const PathSystem& paths) {
    if (g.edge_count() == 0) return 0.0;
    const double denom = 2.0 * static_cast<double>(g.edge_count());
    double max_load = 0.0;
    for (double w : paths.weighted_len) max_load = std::max(max_load, w);
    return max_load / denom;
}

EdgeClassStats edge_stats(const Graph& g, const CubeIndex& cubes, const HighLowPartition& hl,
                          const PathSystem& paths, const WeightPartition& partition) {
    const std::uint32_t n = g.node_count();
    EdgeClassStats stats;
    stats.classes = partition.class_count();
    stats.usage.assign(g.edge_count(), 0);
    stats.sigma.assign(g.edge_count(), 0.0);
    stats.lambda.assign(g.edge_count() * static_cast<std::size_t>(stats.classes) * stats.classes,
                        0);

    std::vector<int> node_class(n);
    for (std::uint32_t v = 0; v < n; ++v) node_class[v] = partition.classify(g.weight(v));

    std::vector<double> weighted(g.edge_count(), 0.0);
    std::vector<std::uint32_t> nodes;
    std::vector<std::uint64_t> cells;
    for (std::uint64_t p = 0; p < paths.pairs_requested; ++p) {
        std::uint32_t u, v;
        if (paths.exact)
            decode_pair(p, n, u, v);
        else
            sampled_pair(paths.seed, p, n, u, v);
        std::uint64_t redraws = 0;
        if (!path_for_pair(g, cubes, hl, paths.reps, paths.seed, u, v, paths.resample_cap, nodes,
                           cells, redraws, nullptr))
            continue;
        const double dd = static_cast<double>(g.degree(u)) * static_cast<double>(g.degree(v));
        const std::uint32_t len = static_cast<std::uint32_t>(nodes.size() - 1);
        const int cu = node_class[u], cv = node_class[v];
        for (std::uint32_t h = 0; h + 1 < nodes.size(); ++h) {
            const std::int64_t e = g.edge_index(nodes[h], nodes[h + 1]);
            stats.usage[e] += 1;
            stats.sigma[e] += dd;
            weighted[e] += dd * len;
            ++stats.lambda[(static_cast<std::size_t>(e) * stats.classes + cu) * stats.classes + cv];
        }
    }

    const double denom = 2.0 * static_cast<double>(g.edge_count());
    double max_load = 0.0;
    for (double w : weighted) max_load = std::max(max_load, w);
    stats.rho = g.edge_count() ? max_load / denom : 0.0;
    return stats;
}

}  // namespace gtg
