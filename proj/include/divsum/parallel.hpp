#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace divsum {

// Splits [begin, end) into fixed-size chunks, evaluates fn(lo, hi) per chunk,
// and combines the partials in chunk order. The chunking depends only on the
// range, so results are identical for every thread count.
template <typename T, typename Fn>
T chunked_sum(std::int64_t begin, std::int64_t end, std::int64_t chunk_size, int threads, Fn fn) {
    if (end <= begin) return T{};
    const std::int64_t n_chunks = (end - begin + chunk_size - 1) / chunk_size;
    std::vector<T> partials(static_cast<std::size_t>(n_chunks));
    auto work = [&](std::int64_t ci) {
        const std::int64_t lo = begin + ci * chunk_size;
        const std::int64_t hi = std::min(end, lo + chunk_size);
        partials[static_cast<std::size_t>(ci)] = fn(lo, hi);
    };
    if (threads <= 1 || n_chunks == 1) {
        for (std::int64_t ci = 0; ci < n_chunks; ++ci) work(ci);
    } else {
        std::atomic<std::int64_t> next{0};
        const int n_workers = static_cast<int>(std::min<std::int64_t>(threads, n_chunks));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w)
            pool.emplace_back([&] {
                for (std::int64_t ci = next.fetch_add(1); ci < n_chunks; ci = next.fetch_add(1)) work(ci);
            });
        for (auto& th : pool) th.join();
    }
    T total{};
    for (const auto& p : partials) total = total + p;
    return total;
}

// fn(i) -> R for i in [0, n); results returned in index order.
template <typename R, typename Fn>
std::vector<R> indexed_map(std::int64_t n, int threads, Fn fn) {
    std::vector<R> out(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
    if (n <= 0) return out;
    if (threads <= 1 || n == 1) {
        for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        return out;
    }
    std::atomic<std::int64_t> next{0};
    const int n_workers = static_cast<int>(std::min<std::int64_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w)
        pool.emplace_back([&] {
            for (std::int64_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                out[static_cast<std::size_t>(i)] = fn(i);
        });
    for (auto& th : pool) th.join();
    return out;
}

} // namespace divsum
