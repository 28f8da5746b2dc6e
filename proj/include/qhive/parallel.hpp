/**
 * @file parallel.hpp
 * Minimal fork-join helpers. Work is cut into fixed-size chunks that do not
 * depend on the thread count, so floating-point reductions give the same
 * bits for any number of threads.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qhive {

inline constexpr std::size_t kChunk = 512;

/// Runs body(chunk_index) for every chunk on up to `threads` workers.
template <class Body>
void parallel_chunks(std::size_t chunks, int threads, Body&& body) {
    if (threads <= 1 || chunks <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) body(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                body(c);
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    int nt = static_cast<int>(std::min<std::size_t>(chunks, static_cast<std::size_t>(threads)));
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

/// Pairwise sum of a vector, left to right at every level.
template <class T>
T pairwise_sum(std::vector<T> v) {
    if (v.empty()) return T{};
    while (v.size() > 1) {
        std::vector<T> next((v.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i] = 2 * i + 1 < v.size() ? v[2 * i] + v[2 * i + 1] : v[2 * i];
        v.swap(next);
    }
    return v[0];
}

/// Σ_{k < count} term(k), chunked and combined pairwise.
template <class T, class Term>
T parallel_chunked_sum(std::size_t count, int threads, Term&& term) {
    std::size_t chunks = (count + kChunk - 1) / kChunk;
    std::vector<T> partial(chunks, T{});
    parallel_chunks(chunks, threads, [&](std::size_t c) {
        T acc{};
        std::size_t hi = std::min(count, (c + 1) * kChunk);
        for (std::size_t k = c * kChunk; k < hi; ++k) acc += term(k);
        partial[c] = acc;
    });
    return pairwise_sum(std::move(partial));
}

}  // namespace qhive
