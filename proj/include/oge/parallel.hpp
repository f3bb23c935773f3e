#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace oge {

// Number of worker threads: hardware concurrency, capped by the OGE_THREADS
// environment variable when set (0 or 1 disables threading).
inline unsigned worker_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("OGE_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 0 && (unsigned long)v < hw) hw = unsigned(v);
        if (hw == 0) hw = 1;
    }
    return hw;
}

// Index-ordered parallel map: f(i) runs for i in [0,n); results must be
// written to slot i by the caller's functor, so output order is independent
// of scheduling.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    unsigned workers = worker_threads();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = std::size_t(w) * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f, &error, &error_mutex] {
            try {
                for (std::size_t i = lo; i < hi; ++i) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}
