#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace percolab {

// Runs fn(trial) for trial in [0, n) across `workers` threads. Work items are
// claimed through an atomic counter; callers must make fn(trial) a pure
// function of the trial index so results are schedule-independent.
inline void parallel_trials(int workers, uint64_t n, const std::function<void(uint64_t)>& fn) {
    if (workers <= 1 || n < 2) {
        for (uint64_t t = 0; t < n; ++t) fn(t);
        return;
    }
    std::atomic<uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const uint64_t t = next.fetch_add(1, std::memory_order_relaxed);
            if (t >= n) return;
            try {
                fn(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace percolab
