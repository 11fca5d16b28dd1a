#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace gtg {

// Runs fn(begin, end) over [0, count) split into contiguous chunks, one per
// worker. Callers must write to disjoint slots or merge thread-local tallies;
// results must not depend on scheduling.
template <class Fn>
void parallel_for_chunks(std::size_t count, Fn&& fn, unsigned threads = 0) {
    if (count == 0) return;
    unsigned hw = threads ? threads : std::thread::hardware_concurrency();
    hw = std::max(1u, std::min<unsigned>(hw, static_cast<unsigned>(std::min<std::size_t>(count, 64))));
    if (hw == 1) {
        fn(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(hw);
    const std::size_t chunk = (count + hw - 1) / hw;
    for (unsigned t = 0; t < hw; ++t) {
        const std::size_t begin = std::min(count, t * chunk);
        const std::size_t end = std::min(count, begin + chunk);
        if (begin == end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace gtg
