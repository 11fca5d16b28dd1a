#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gtg {

// Immutable geometric graph instance: node positions in the toric unit cube,
// node weights, the threshold used to build the edge set, and a CSR view of
// the adjacency. Edge {i,j} is stored once in `edges` with i < j, in
// lexicographic order; that position is the undirected edge id used by the
// path machinery.
class Graph {
  public:
    using Edge = std::pair<std::uint32_t, std::uint32_t>;

    Graph() = default;

    // Builds the CSR structure from an i<j edge list (any order; sorted and
    // checked here). Structural invariants enforced: ids in range, i < j, no
    // duplicates. The caller vouches that the edge set matches its rule.
    static Graph from_parts(int dim, double theta, std::uint64_t seed,
                            std::vector<double> positions, std::vector<double> weights,
                            std::vector<Edge> edges);

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(weights_.size()); }
    std::uint64_t edge_count() const { return edges_.size(); }
    int dim() const { return dim_; }
    double theta() const { return theta_; }
    std::uint64_t seed() const { return seed_; }

    std::span<const double> position(std::uint32_t v) const {
        return {positions_.data() + static_cast<std::size_t>(v) * dim_, static_cast<std::size_t>(dim_)};
    }
    const std::vector<double>& positions() const { return positions_; }
    double weight(std::uint32_t v) const { return weights_[v]; }
    const std::vector<double>& weights() const { return weights_; }

    std::uint32_t degree(std::uint32_t v) const {
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }
    std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
        return {nbrs_.data() + offsets_[v], nbrs_.data() + offsets_[v + 1]};
    }
    bool has_edge(std::uint32_t u, std::uint32_t v) const;

    // Undirected edge id (index into edges()) or -1 when not an edge.
    std::int64_t edge_index(std::uint32_t u, std::uint32_t v) const;

    const std::vector<Edge>& edges() const { return edges_; }

    // Line-oriented text format, version header "GTG v1", hex floats for
    // bit-exact round trips. load() validates the structural invariants and
    // that every listed edge satisfies the threshold rule.
    void save(const std::string& path) const;
    static Graph load(const std::string& path);

  private:
    int dim_ = 0;
    double theta_ = 0.0;
    std::uint64_t seed_ = 0;
    std::vector<double> positions_;
    std::vector<double> weights_;
    std::vector<Edge> edges_;
    std::vector<std::uint64_t> offsets_;
    std::vector<std::uint32_t> nbrs_;
    std::vector<std::uint32_t> eids_;  // parallel to nbrs_: undirected edge id

  public:
    std::span<const std::uint32_t> neighbor_edge_ids(std::uint32_t v) const {
        return {eids_.data() + offsets_[v], eids_.data() + offsets_[v + 1]};
    }
};

// Inclusive threshold rule: edge iff (wi + wj) / r^d >= theta. Coincident
// points (r == 0) count as an edge; the ratio diverges there.
bool edge_predicate(double wi, double wj, double r, double theta, int d);

// r^d by repeated multiplication (d is a small positive integer).
double pow_int(double r, int d);

}  // namespace gtg
