#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sgspec {

/// Process-wide worker count for the parallel loops below. Changing it affects
/// runtime only: every parallel body derives its randomness from per-index
/// streams and writes to disjoint slots.
void set_thread_count(unsigned n) noexcept;
unsigned thread_count() noexcept;

/// Calls body(begin, end) over disjoint chunks of [0, n).
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const unsigned threads = std::max(1u, std::min<unsigned>(thread_count(), static_cast<unsigned>(n / 1024 + 1)));
    if (threads == 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace sgspec
