#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gtg {

// A position in the toric unit cube [0,1)^d. Opposite faces are identified,
// so every coordinate lives in [0,1) and distances wrap around.
struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}
    int dim() const { return static_cast<int>(coords.size()); }
};

// Cell of the k^d toric grid tiling of the unit cube.
struct GridIndex {
    std::vector<int> cell;  // entries in [0, k)
    int k = 1;

    int dim() const { return static_cast<int>(cell.size()); }
    bool operator==(const GridIndex&) const = default;
};

// Euclidean distance with per-coordinate wraparound min(|a-b|, 1-|a-b|).
// Symmetric, bounded by sqrt(d)/2. Throws on dimension mismatch.
double toric_distance(std::span<const double> p, std::span<const double> q);
double toric_distance(const Point& p, const Point& q);

// Volume of the unit ball in d dimensions: pi^k/k! for d=2k even,
// 2^d k! pi^k / d! for d=2k+1 odd. Throws for d < 1.
double unit_ball_volume(int d);

// Grid cell containing p: floor(coord * k) per coordinate.
GridIndex cube_of(const Point& p, int k);
void cube_of(std::span<const double> p, int k, std::span<int> out);

// Flat row-major index of a cell in the k^d grid.
std::uint64_t cell_rank(std::span<const int> cell, int k);

// Two cells are adjacent when they share a (d-1)-dimensional face: the
// entries differ by +-1 (mod k) in exactly one coordinate. A cell is never
// adjacent to itself, so the k=1 grid has no adjacent pairs.
bool adjacent_cubes(const GridIndex& a, const GridIndex& b);

}  // namespace gtg
