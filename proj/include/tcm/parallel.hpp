#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tcm {

// Worker count: TCM_THREADS if set to a positive integer, else hardware concurrency.
inline unsigned thread_count() {
    if (const char* env = std::getenv("TCM_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(worker, begin, end) over [0, count) split into contiguous stripes.
// Callers reduce per-worker results in worker order, so output is deterministic.
template <class Body>
void parallel_stripes(std::size_t count, unsigned workers, Body&& body) {
    workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1)));
    if (workers == 1) {
        body(0u, std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = count * w / workers;
        const std::size_t end = count * (w + 1) / workers;
        pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace tcm
