#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace qlab {

/// Worker count: QLAB_THREADS if set, otherwise 1 (deterministic default).
inline unsigned configured_threads() {
    if (const char* env = std::getenv("QLAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

/// Runs fn(i) for i in [0, count). Work items must be independent; callers
/// keep determinism by writing results into slot i rather than reducing.
template <class Fn>
void parallel_for_indexed(size_t count, unsigned threads, const Fn& fn) {
    if (threads <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const unsigned workers = std::min<size_t>(threads, count);
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace qlab
