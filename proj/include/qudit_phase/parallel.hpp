#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace qudit_phase {

/// Worker cap: QUDIT_PHASE_THREADS when set (clamped to [1, 256]),
/// otherwise the hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("QUDIT_PHASE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return std::min(n, 256);
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, n).  Each index must write only its own slot;
/// results are then identical for any worker count.  The first exception
/// thrown by any worker is rethrown on the calling thread.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_count(), std::max(n, 1));
    if (workers <= 1 || n < 2) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([=, &fn, &errors] {
            try {
                for (int i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace qudit_phase
