#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qasymp {

// Worker count: explicit argument > QASYMP_JOBS env > hardware concurrency.
inline int default_jobs() {
    if (const char* env = std::getenv("QASYMP_JOBS")) {
        int j = std::atoi(env);
        if (j > 0) return j;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Splits [begin, end) into contiguous chunks, one worker thread each, and
// concatenates the per-chunk outputs in index order, so results are
// deterministic regardless of scheduling.
template <typename T, typename Fn>
std::vector<T> parallel_map_range(std::int64_t begin, std::int64_t end, Fn&& fn, int jobs = 0) {
    if (jobs <= 0) jobs = default_jobs();
    std::int64_t count = std::max<std::int64_t>(0, end - begin);
    jobs = static_cast<int>(std::min<std::int64_t>(jobs, std::max<std::int64_t>(count, 1)));
    std::vector<std::vector<T>> chunks(static_cast<std::size_t>(jobs));
    if (jobs <= 1) {
        fn(begin, end, chunks[0]);
        return chunks[0];
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(jobs));
    std::int64_t step = (count + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
        std::int64_t lo = begin + step * w;
        std::int64_t hi = std::min(end, lo + step);
        if (lo >= hi) break;
        threads.emplace_back([&, w, lo, hi] { fn(lo, hi, chunks[static_cast<std::size_t>(w)]); });
    }
    for (auto& t : threads) t.join();
    std::vector<T> out;
    for (auto& c : chunks) out.insert(out.end(), c.begin(), c.end());
    return out;
}

}  // namespace qasymp
