#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace tldimer {

inline int default_max_threads() {
    if (const char* env = std::getenv("TLDIMER_MAX_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Applies fn to 0..count-1 on up to max_threads workers. Results are indexed,
// so the output does not depend on scheduling; fn must be pure.
template <class R>
std::vector<R> parallel_map(int count, const std::function<R(int)>& fn, int max_threads) {
    std::vector<R> results(count);
    if (max_threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= count) break;
            results[i] = fn(i);
        }
    };
    int nthreads = std::min(max_threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace tldimer
