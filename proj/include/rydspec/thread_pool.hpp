#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rydspec {

// Runs body(i) for i in [0, count) on up to `threads` workers (0 picks the
// hardware concurrency).  Work items are handed out through an atomic
// counter, so each index is processed exactly once; the body must write its
// result into a slot owned by that index, which keeps assembled results
// independent of scheduling.  If bodies throw, the exception from the lowest
// index is rethrown after all workers have drained.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
    if (count == 0)
        return;
    std::size_t n_workers = threads > 0
                                ? static_cast<std::size_t>(threads)
                                : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min(n_workers, count);

    if (n_workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = count;
    std::exception_ptr error;

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    if (error)
        std::rethrow_exception(error);
}

} // namespace rydspec
