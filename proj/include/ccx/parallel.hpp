#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ccx {

inline int effective_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for every i in [0, jobs) on a small pool (0 threads = all cores).
// Job-to-worker assignment is dynamic, so callers must index any results by
// job id (or merge commutatively) to stay schedule-independent.
inline void parallel_for_jobs(std::size_t jobs, int threads,
                              const std::function<void(std::size_t)>& fn) {
    std::size_t workers = static_cast<std::size_t>(effective_threads(threads));
    if (jobs > 0 && workers > jobs) workers = jobs;
    if (workers <= 1 || jobs <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= jobs) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace ccx
