#ifndef TRUNCDIST_PARAMS_HPP
#define TRUNCDIST_PARAMS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace truncdist {

inline constexpr const char* kVersion = "0.1.0";

/// Invalid (n, m, q) combination or other bad argument.
struct params_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Query budget exhausted on an oracle session.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested computation exceeds the configured enumeration limits.
struct size_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Which function the oracle committed to.
enum class World : int { Function = 0, Permutation = 1 };

inline const char* world_name(World w) {
    return w == World::Permutation ? "permutation" : "function";
}

/// Problem instance: n-bit domain, m truncated bits, q-query budget.
///
/// n is capped at 62 so every domain element and reply fits a 64-bit word.
/// Replies live in [0, 2^(n-m)); each reply value ("bucket") has exactly
/// 2^m possible untruncated outputs behind it.
struct Params {
    unsigned n = 0;
    unsigned m = 0;
    std::uint64_t q = 0;

    Params(unsigned n_, unsigned m_, std::uint64_t q_) : n(n_), m(m_), q(q_) {
        if (n < 1 || n > 62)
            throw params_error("n must be in [1, 62], got " + std::to_string(n));
        if (m >= n)
            throw params_error("m must satisfy 0 <= m < n, got m=" + std::to_string(m) +
                               " n=" + std::to_string(n));
        if (q < 1 || q > (std::uint64_t(1) << n))
            throw params_error("q must be in [1, 2^n], got q=" + std::to_string(q) +
                               " n=" + std::to_string(n));
    }

    std::uint64_t domain_size() const { return std::uint64_t(1) << n; }
    std::uint64_t alphabet_size() const { return std::uint64_t(1) << (n - m); }
    std::uint64_t bucket_capacity() const { return std::uint64_t(1) << m; }
    unsigned reply_bits() const { return n - m; }

    bool operator==(const Params&) const = default;
};

}  // namespace truncdist

#endif
