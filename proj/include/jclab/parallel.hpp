// parallel.hpp — chunked index-space parallelism over std::thread.
//
// Work items are addressed by index and write into preallocated slots, so
// results are identical for any worker count.

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace jclab {

inline int default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, total) on `workers` threads in contiguous blocks.
// The first exception thrown by any worker is rethrown on the caller.
template <typename Fn>
void parallel_for(std::int64_t total, int workers, Fn&& fn) {
    if (total <= 0) return;
    workers = std::max(1, workers);
    if (workers == 1 || total == 1) {
        for (std::int64_t i = 0; i < total; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mutex;
    std::int64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::int64_t begin = w * chunk;
        std::int64_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end]() {
            try {
                for (std::int64_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// Splits [0, total) into one contiguous block per worker and runs
// fn(begin, end) on each; lets callers keep per-thread scratch (engines,
// buffers) alive across a block.
template <typename Fn>
void parallel_for_blocks(std::int64_t total, int workers, Fn&& fn) {
    if (total <= 0) return;
    workers = std::max(1, workers);
    std::int64_t chunk = (total + workers - 1) / workers;
    if (workers == 1 || chunk == total) {
        fn(std::int64_t{0}, total);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mutex;
    for (int w = 0; w < workers; ++w) {
        std::int64_t begin = w * chunk;
        std::int64_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end]() {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// Pairwise (tree) summation over [begin, end); the reduction order is a
// fixed function of the index range, independent of threading.
template <typename Get>
double pairwise_sum(std::int64_t begin, std::int64_t end, Get&& get) {
    std::int64_t n = end - begin;
    if (n <= 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (std::int64_t i = begin; i < end; ++i) s += get(i);
        return s;
    }
    std::int64_t mid = begin + n / 2;
    return pairwise_sum(begin, mid, get) + pairwise_sum(mid, end, get);
}

} // namespace jclab
