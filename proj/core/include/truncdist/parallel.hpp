#ifndef TRUNCDIST_PARALLEL_HPP
#define TRUNCDIST_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace truncdist {

/// Effective worker count: `requested` (or hardware concurrency when 0),
/// capped by the TRUNCDIST_THREADS environment variable when set. At least 1.
unsigned resolve_threads(unsigned requested = 0);

/// Static contiguous split of [0, count) into at most `threads` chunks;
/// fn(begin, end, chunk_index) runs once per chunk. Results must be merged
/// order-independently by the caller (integer counts, indexed slots).
void parallel_chunks(std::uint64_t count, unsigned threads,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& fn);

}  // namespace truncdist

#endif
