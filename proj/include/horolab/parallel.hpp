#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace horolab {

// Runs fn(chunk) for chunk = 0..n_chunks-1 on up to n_threads workers and
// returns the per-chunk results in chunk order. Merging in chunk order keeps
// every pipeline deterministic regardless of the thread count.
template <typename T>
std::vector<T> parallel_chunks(std::size_t n_chunks, unsigned n_threads, const std::function<T(std::size_t)>& fn) {
    std::vector<T> results(n_chunks);
    if (n_chunks == 0) return results;
    if (n_threads <= 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) results[c] = fn(c);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            results[c] = fn(c);
        }
    };
    std::vector<std::thread> pool;
    unsigned launch = n_threads < n_chunks ? n_threads : unsigned(n_chunks);
    pool.reserve(launch);
    for (unsigned t = 0; t < launch; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

inline unsigned default_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

}  // namespace horolab
