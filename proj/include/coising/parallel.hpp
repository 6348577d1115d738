#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace coising {

/// Process-wide worker cap, set once by the CLI --threads flag.
inline int& worker_threads() {
    static int count = (int)std::max(1u, std::thread::hardware_concurrency());
    return count;
}

/// Runs fn(i) for i in [0, count) across up to worker_threads() threads.
/// Tasks must write only to their own output slots; iteration order within a
/// worker is ascending, so per-index results are deterministic.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, int max_threads = 0) {
    int threads = max_threads > 0 ? max_threads : worker_threads();
    threads = (int)std::min<std::size_t>((std::size_t)threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve((std::size_t)threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace coising
