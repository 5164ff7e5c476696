#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace wedge32 {

/// Runs fn(begin, end) over [0, count) split into blocks, on up to `jobs`
/// threads. Callers make runs deterministic by writing results into
/// preallocated slots indexed by absolute position.
inline void parallel_blocks(std::size_t count, unsigned jobs,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
    if (count == 0) return;
    if (jobs <= 1) {
        fn(0, count);
        return;
    }
    const std::size_t block = std::max<std::size_t>(64, count / (std::size_t(jobs) * 8));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(block);
            if (begin >= count) return;
            fn(begin, std::min(begin + block, count));
        }
    };
    std::vector<std::thread> threads;
    const unsigned n = std::min<unsigned>(jobs, std::thread::hardware_concurrency() > 0
                                                    ? std::thread::hardware_concurrency() * 2
                                                    : jobs);
    threads.reserve(n);
    for (unsigned i = 0; i < n; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
}

}  // namespace wedge32
