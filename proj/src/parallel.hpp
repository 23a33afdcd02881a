#pragma once

#include <cstddef>
#include <future>
#include <thread>
#include <type_traits>
#include <vector>

namespace discrimlab {

// Evaluates fn(i) for i in [0, n) and returns results in index order, running
// chunks on std::async workers when n is large. fn must be safe to call
// concurrently for distinct i.
template <typename Fn>
auto parallel_map(std::size_t n, Fn&& fn) {
    using R = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<R> out(n);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (n < 2 || hw < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    const std::size_t chunks = std::min<std::size_t>(hw, n);
    const std::size_t per = (n + chunks - 1) / chunks;
    std::vector<std::future<void>> futures;
    futures.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t lo = c * per;
        const std::size_t hi = std::min(n, lo + per);
        if (lo >= hi) break;
        futures.push_back(std::async(std::launch::async, [&fn, &out, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
        }));
    }
    for (auto& f : futures) f.get();
    return out;
}

}  // namespace discrimlab
