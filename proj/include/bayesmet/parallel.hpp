#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bayesmet {

/// Worker count: METROLOGY_THREADS env var if set, else hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("METROLOGY_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

/// Runs fn(i) for i in [0, n). Each index is processed exactly once; callers
/// must write to disjoint outputs so results are identical for any thread count.
inline void parallel_for(long n, const std::function<void(long)>& fn) {
    int workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    auto run = [&] {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= n) break;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int spawn = static_cast<int>(std::min<long>(workers, n));
    pool.reserve(spawn - 1);
    for (int t = 0; t < spawn - 1; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

}  // namespace bayesmet
