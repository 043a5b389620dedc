// Minimal deterministic worker pool: indices are strided across threads and
// every result lands in a caller-owned slot, so reductions run in index order
// and the output is independent of the thread count.
#pragma once

#include <cmath>
#include <cstddef>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace qcp {

// body(i) is called exactly once for every i in [0, count); body must only
// write to per-index state.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
    if (threads < 1) threads = 1;
    if (static_cast<std::size_t>(threads) > count) threads = static_cast<int>(count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < count; i += threads) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// One-pass mean / standard error over a finished sample vector, accumulated
// in index order (Welford) so the result is byte-stable.
struct MeanStderr {
    double mean = 0.0;
    double std_error = 0.0;
};

inline MeanStderr welford(const std::vector<double>& xs) {
    MeanStderr out;
    double mean = 0.0, m2 = 0.0;
    std::size_t k = 0;
    for (double x : xs) {
        ++k;
        const double d = x - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (x - mean);
    }
    out.mean = mean;
    if (k >= 2) {
        const double var = m2 / static_cast<double>(k - 1);
        out.std_error = std::sqrt(var / static_cast<double>(k));
    }
    return out;
}

}  // namespace qcp
