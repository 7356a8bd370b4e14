#ifndef TRUNCDIST_RNG_HPP
#define TRUNCDIST_RNG_HPP

#include <cstdint>

namespace truncdist {

/// SplitMix64 output/finalizer step (Steele-Lea-Vigna constants).
/// A bijection on 64-bit words; used both as the generator core and to
/// derive independent stream seeds from (seed, stream index) pairs.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// SplitMix64: counter-based generator with a fixed golden-ratio increment.
/// Bit-reproducible on every platform; one next() per bounded draw since all
/// ranges in this codebase are powers of two.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, 2^bits); bits must be in [1, 64].
    /// Takes the high bits of one output word.
    std::uint64_t next_bits(unsigned bits) { return next() >> (64u - bits); }

  private:
    std::uint64_t state_;
};

/// Deterministic independent stream for (seed, stream). Streams indexed by
/// trial never reshuffle when more trials are added.
inline SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(mix64(seed) ^ mix64(0x6a09e667f3bcc909ULL + stream));
}

}  // namespace truncdist

#endif
