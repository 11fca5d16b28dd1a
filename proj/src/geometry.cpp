#include "gtg/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace gtg {

double toric_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size() || p.empty())
        throw std::invalid_argument("toric_distance: dimension mismatch");
    double sq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double delta = std::fabs(p[i] - q[i]);
        delta = std::min(delta, 1.0 - delta);
        sq += delta * delta;
    }
    return std::sqrt(sq);
}

double toric_distance(const Point& p, const Point& q) {
    return toric_distance(std::span<const double>(p.coords), std::span<const double>(q.coords));
}

double unit_ball_volume(int d) {
    if (d < 1) throw std::invalid_argument("unit_ball_volume: d must be >= 1");
    const double pi = 3.14159265358979323846;
    const int k = d / 2;
    if (d % 2 == 0) {
        // pi^k / k!
        double v = 1.0;
        for (int i = 1; i <= k; ++i) v *= pi / static_cast<double>(i);
        return v;
    }
    // odd d = 2k+1: 2^d k! pi^k / d! = 2^d pi^k / ((k+1)(k+2)...d)
    double v = std::ldexp(1.0, d);
    for (int i = 1; i <= k; ++i) v *= pi;
    for (int i = k + 1; i <= d; ++i) v /= static_cast<double>(i);
    return v;
}

void cube_of(std::span<const double> p, int k, std::span<int> out) {
    if (k < 1) throw std::invalid_argument("cube_of: k must be >= 1");
    for (std::size_t i = 0; i < p.size(); ++i) {
        int c = static_cast<int>(std::floor(p[i] * k));
        if (c >= k) c = k - 1;  // guards against coord*k rounding up to k
        if (c < 0) c = 0;
        out[i] = c;
    }
}

GridIndex cube_of(const Point& p, int k) {
    GridIndex g;
    g.k = k;
    g.cell.resize(p.coords.size());
    cube_of(std::span<const double>(p.coords), k, std::span<int>(g.cell));
    return g;
}

std::uint64_t cell_rank(std::span<const int> cell, int k) {
    std::uint64_t r = 0;
    for (int c : cell) r = r * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(c);
    return r;
}

bool adjacent_cubes(const GridIndex& a, const GridIndex& b) {
    if (a.k != b.k || a.cell.size() != b.cell.size())
        throw std::invalid_argument("adjacent_cubes: incompatible grids");
    const int k = a.k;
    if (k < 2) return false;
    int differing = 0;
    for (std::size_t i = 0; i < a.cell.size(); ++i) {
        if (a.cell[i] == b.cell[i]) continue;
        int diff = a.cell[i] - b.cell[i];
        if (diff < 0) diff += k;
        if (diff != 1 && diff != k - 1) return false;
        ++differing;
    }
    return differing == 1;
}

}  // namespace gtg
