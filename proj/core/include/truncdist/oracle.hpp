#ifndef TRUNCDIST_ORACLE_HPP
#define TRUNCDIST_ORACLE_HPP

#include "truncdist/params.hpp"
#include "truncdist/rng.hpp"

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace truncdist {

/// One reply per query, each in [0, 2^(n-m)).
using ReplySequence = std::vector<std::uint64_t>;

/// Lazily sampled oracle. In the permutation world the full n-bit output of
/// each fresh query is drawn uniformly from the outputs not used so far
/// (rejection sampling); in the function world it is drawn uniformly from
/// the whole codomain. Either way the reply is the output with its low m
/// bits dropped, and repeated inputs return the cached value.
///
/// Sessions are single-owner; they are not safe to share across threads.
class OracleSession {
  public:
    OracleSession(const Params& params, World world, std::uint64_t seed);

    /// Reply to an n-bit input. Throws budget_error once q distinct inputs
    /// have been queried, params_error if the input is out of range.
    std::uint64_t query(std::uint64_t input);

    const Params& params() const { return params_; }
    World world() const { return world_; }
    std::uint64_t distinct_queries() const { return assigned_.size(); }

  private:
    Params params_;
    World world_;
    SplitMix64 rng_;
    std::unordered_map<std::uint64_t, std::uint64_t> assigned_;  // input -> full output
    std::unordered_set<std::uint64_t> used_outputs_;             // permutation world
};

/// Replies to the canonical distinct queries 0, 1, ..., q-1. Both worlds'
/// reply distributions are invariant under the choice of distinct inputs,
/// so batch statistics lose nothing by fixing the queries. Bit-identical
/// to an OracleSession with the same seed queried at 0..q-1 in order.
ReplySequence sample_reply_sequence(const Params& params, World world, std::uint64_t seed);

/// Reusable sampling workspace for Monte Carlo loops: keeps the used-output
/// structure allocated across trials. Dense bitmap for small domains,
/// hash set otherwise.
class BatchSampler {
  public:
    explicit BatchSampler(const Params& params);

    /// Fills `out` with q replies drawn from `rng`; same draw sequence as
    /// OracleSession/sample_reply_sequence.
    void sample(World world, SplitMix64& rng, ReplySequence& out);

  private:
    Params params_;
    bool dense_;
    std::vector<std::uint64_t> used_bits_;
    std::vector<std::uint64_t> touched_words_;
    std::unordered_set<std::uint64_t> used_set_;
};

}  // namespace truncdist

#endif
