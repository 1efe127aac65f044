#pragma once
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace qcalc {

// QCALC_THREADS when set (>= 1), otherwise hardware concurrency.
inline unsigned worker_threads() {
    if (const char* env = std::getenv("QCALC_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

/* Runs fn(0..count-1) across worker_threads() threads.  Each index owns its
 * output slot, so results are as deterministic as the serial loop; the first
 * exception is rethrown after the pool drains. */
inline void parallel_index(size_t count, const std::function<void(size_t)>& fn) {
    size_t workers = std::min<size_t>(worker_threads(), count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace qcalc
