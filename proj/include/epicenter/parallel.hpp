#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace epi {

/// Runs fn(i) for every i in [0, count) on up to `threads` workers
/// (0 = hardware concurrency).  Work items must write only to their own
/// output slot; which worker executes which item is unspecified, so results
/// must not depend on the assignment.  The first exception thrown by any
/// item is rethrown on the calling thread.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(count);  // stop handing out work
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    const unsigned n_workers = static_cast<unsigned>(
        std::min<std::size_t>(threads, count));
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace epi
