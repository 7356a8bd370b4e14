#include "truncdist/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace truncdist {

unsigned resolve_threads(unsigned requested) {
    unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TRUNCDIST_THREADS")) {
        try {
            unsigned cap = static_cast<unsigned>(std::stoul(env));
            if (cap >= 1) t = std::min(t, cap);
        } catch (...) {
            // unparseable cap ignored
        }
    }
    return std::max(1u, t);
}

void parallel_chunks(std::uint64_t count, unsigned threads,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& fn) {
    if (count == 0) return;
    threads = std::max<unsigned>(1, std::min<std::uint64_t>(threads, count));
    if (threads == 1) {
        fn(0, count, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::uint64_t base = count / threads, extra = count % threads;
    std::uint64_t begin = 0;
    for (unsigned c = 0; c < threads; ++c) {
        std::uint64_t end = begin + base + (c < extra ? 1 : 0);
        pool.emplace_back([&fn, begin, end, c] { fn(begin, end, c); });
        begin = end;
    }
    for (auto& th : pool) th.join();
}

}  // namespace truncdist
