#include "gtg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gtg/geometry.hpp"

namespace gtg {

double pow_int(double r, int d) {
    double p = r;
    for (int i = 1; i < d; ++i) p *= r;
    return p;
}

bool edge_predicate(double wi, double wj, double r, double theta, int d) {
    if (r == 0.0) return true;
    return (wi + wj) / pow_int(r, d) >= theta;
}

Graph Graph::from_parts(int dim, double theta, std::uint64_t seed,
                        std::vector<double> positions, std::vector<double> weights,
                        std::vector<Edge> edges) {
    const std::size_t n = weights.size();
    if (dim < 1) throw std::invalid_argument("graph: dimension must be >= 1");
    if (positions.size() != n * static_cast<std::size_t>(dim))
        throw std::invalid_argument("graph: positions/weights size mismatch");

    std::sort(edges.begin(), edges.end());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [i, j] = edges[e];
        if (i >= j) throw std::invalid_argument("graph: edges must have i < j");
        if (j >= n) throw std::invalid_argument("graph: edge endpoint out of range");
        if (e > 0 && edges[e] == edges[e - 1]) throw std::invalid_argument("graph: duplicate edge");
    }

    Graph g;
    g.dim_ = dim;
    g.theta_ = theta;
    g.seed_ = seed;
    g.positions_ = std::move(positions);
    g.weights_ = std::move(weights);
    g.edges_ = std::move(edges);

    g.offsets_.assign(n + 1, 0);
    for (const auto& [i, j] : g.edges_) {
        ++g.offsets_[i + 1];
        ++g.offsets_[j + 1];
    }
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];

    g.nbrs_.resize(2 * g.edges_.size());
    g.eids_.resize(2 * g.edges_.size());
    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (std::uint32_t e = 0; e < g.edges_.size(); ++e) {
        const auto [i, j] = g.edges_[e];
        g.nbrs_[cursor[i]] = j;
        g.eids_[cursor[i]++] = e;
        g.nbrs_[cursor[j]] = i;
        g.eids_[cursor[j]++] = e;
    }
    // Neighbor lists are sorted already: edges are lexicographic, so slots for
    // node i fill with ascending j; slots for j fill with ascending i.
    return g;
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::int64_t Graph::edge_index(std::uint32_t u, std::uint32_t v) const {
    const auto nb = neighbors(u);
    const auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return -1;
    return static_cast<std::int64_t>(eids_[offsets_[u] + static_cast<std::uint64_t>(it - nb.begin())]);
}

namespace {

std::string hex_double(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%a", x);
    return buf;
}

double parse_double(const std::string& tok) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + tok.size()) throw std::runtime_error("graph load: bad number '" + tok + "'");
    return v;
}

}  // namespace

void Graph::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("graph save: cannot open " + path);
    out << "GTG v1 n=" << node_count() << " d=" << dim_ << " theta=" << hex_double(theta_)
        << " seed=" << seed_ << "\n";
    for (std::uint32_t v = 0; v < node_count(); ++v) {
        out << v;
        for (double c : position(v)) out << ' ' << hex_double(c);
        out << ' ' << hex_double(weights_[v]) << "\n";
    }
    for (const auto& [i, j] : edges_) out << i << ' ' << j << "\n";
    if (!out) throw std::runtime_error("graph save: write failed for " + path);
}

Graph Graph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("graph load: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("graph load: empty file");
    std::uint64_t n = 0, seed = 0;
    int dim = 0;
    {
        char theta_buf[64];
        unsigned long long n_ull = 0, seed_ull = 0;
        if (std::sscanf(line.c_str(), "GTG v1 n=%llu d=%d theta=%63s seed=%llu", &n_ull, &dim,
                        theta_buf, &seed_ull) != 4)
            throw std::runtime_error("graph load: unrecognized header '" + line + "'");
        n = n_ull;
        seed = seed_ull;
        char* end = nullptr;
        double theta = std::strtod(theta_buf, &end);
        if (*end != '\0') throw std::runtime_error("graph load: bad theta");

        std::vector<double> positions(n * static_cast<std::size_t>(dim));
        std::vector<double> weights(n);
        for (std::uint64_t v = 0; v < n; ++v) {
            if (!std::getline(in, line)) throw std::runtime_error("graph load: truncated node block");
            std::istringstream is(line);
            std::string tok;
            if (!(is >> tok) || parse_double(tok) != static_cast<double>(v))
                throw std::runtime_error("graph load: node ids must be 0..n-1 in order");
            for (int c = 0; c < dim; ++c) {
                if (!(is >> tok)) throw std::runtime_error("graph load: short node line");
                const double x = parse_double(tok);
                if (!(x >= 0.0 && x < 1.0))
                    throw std::runtime_error("graph load: coordinate outside [0,1)");
                positions[v * dim + c] = x;
            }
            if (!(is >> tok)) throw std::runtime_error("graph load: missing weight");
            const double w = parse_double(tok);
            if (!(w >= 0.0)) throw std::runtime_error("graph load: negative weight");
            weights[v] = w;
        }

        std::vector<Edge> edges;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            unsigned long long i = 0, j = 0;
            if (std::sscanf(line.c_str(), "%llu %llu", &i, &j) != 2)
                throw std::runtime_error("graph load: bad edge line '" + line + "'");
            if (!edges.empty()) {
                const Edge prev = edges.back();
                if (std::make_pair(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)) <= prev)
                    throw std::runtime_error("graph load: edges out of order");
            }
            edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
        }

        Graph g = from_parts(dim, theta, seed, std::move(positions), std::move(weights),
                             std::move(edges));
        // Presence direction of the edge rule; absence is checked against the
        // brute-force oracle in tests, not on every load.
        for (const auto& [i, j] : g.edges_) {
            const double r = toric_distance(g.position(i), g.position(j));
            if (!edge_predicate(g.weights_[i], g.weights_[j], r, g.theta_, g.dim_))
                throw std::runtime_error("graph load: edge " + std::to_string(i) + "-" +
                                         std::to_string(j) + " violates the threshold rule");
        }
        return g;
    }
}

}  // namespace gtg
