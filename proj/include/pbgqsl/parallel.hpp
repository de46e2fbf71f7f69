// parallel.hpp: Minimal index-parallel loop with deterministic result placement

#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace pbgqsl {

/// Runs `task(i)` for i in [0, count) on up to `workers` threads. Each index
/// is handled exactly once; callers store results by index.
template <class Task>
void parallel_for(std::size_t count, unsigned workers, const Task& task) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i)
            task(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

/// Worker count: explicit value if nonzero, else $PBGQSL_WORKERS, else the
/// number of logical cores.
inline unsigned resolve_workers(unsigned requested) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("PBGQSL_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace pbgqsl
