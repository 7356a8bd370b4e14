#ifndef TRUNCDIST_DISTINGUISH_HPP
#define TRUNCDIST_DISTINGUISH_HPP

#include "truncdist/good_set.hpp"
#include "truncdist/numeric.hpp"
#include "truncdist/oracle.hpp"
#include "truncdist/params.hpp"
#include "truncdist/profile.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace truncdist {

/// Monte Carlo advantage estimate. Sign convention:
/// point = P(guess = permutation | permutation) - P(guess = permutation | function),
/// reported unclamped. ci_half_width = z sqrt(v1 + v0) with per-world
/// binomial variance estimates and z = 2.5758 (99%, normal approximation;
/// adequate at the trial counts this tool runs, >= 10^4).
struct AdvEstimate {
    double point = 0;
    double ci_half_width = 0;
    std::uint64_t trials_per_world = 0;
    std::uint64_t seed = 0;
    std::uint64_t perm_hits = 0;  // guesses of "permutation" in the permutation world
    std::uint64_t func_hits = 0;  // guesses of "permutation" in the function world
};

/// A deterministic decision rule on reply sequences. All three kinds factor
/// through the multiplicity profile, so decisions are invariant under
/// permuting the replies. Immutable and safe to share across threads.
///
/// - likelihood_ratio: guess permutation iff P_p(w)/P_F(w) >= 1 (ties go to
///   permutation, fixed). Evaluated in extended precision with a certified
///   margin; decisions inside the margin fall back to exact integer
///   arithmetic, so the rule is exact.
/// - col2_threshold: guess function iff col_2 >= theta.
/// - good_set_membership: guess permutation iff the sequence lies in S.
class Distinguisher {
  public:
    enum class Kind { LikelihoodRatio, Col2Threshold, GoodSetMembership };

    static Distinguisher likelihood_ratio(const Params& params);
    static Distinguisher col2_threshold(const Params& params, const Rat& theta);
    static Distinguisher good_set_membership(const Params& params, GoodSetParams s);

    World decide(const ReplySequence& omega) const;
    World decide(const MultiplicityProfile& profile) const;

    /// Decision from the multiset of reply multiplicities in any order
    /// (the hot path; avoids sorting).
    World decide_parts(const std::vector<std::uint64_t>& parts) const;

    const Params& params() const { return params_; }
    Kind kind() const { return kind_; }
    std::string name() const;

  private:
    Distinguisher(const Params& params, Kind kind) : params_(params), kind_(kind) {}

    struct LrTables;
    Params params_;
    Kind kind_;
    std::shared_ptr<const LrTables> lr_;
    Int col2_threshold_int_;  // ceil(theta); guess function iff col_2 >= this
    std::shared_ptr<const GoodSetMembership> membership_;
};

/// Collision-test good set: t = 2, dev_2 = c q / 2^((n-m+1)/2), beta = 0.
GoodSetParams hall_good_set(const Params& params, double c);

/// Runs `trials` independent sessions per world on streams indexed
/// (world, trial); adding trials extends rather than reshuffles, and the
/// result is bit-identical for any worker count.
AdvEstimate mc_advantage(const Distinguisher& d, std::uint64_t trials, std::uint64_t seed,
                         unsigned threads = 0);

using DistinguisherFactory = std::function<Distinguisher(const Params&)>;

struct EmpiricalQHalf {
    bool reached = false;
    std::uint64_t q_half = 0;  // smallest probed q whose lower CI edge is >= 1/2
};

/// Exponential-then-binary search for the smallest q <= max_q at which the
/// Monte Carlo lower CI edge reaches 1/2 (conservative criterion). Each
/// probed q uses an independent derived seed; deterministic in `seed`.
EmpiricalQHalf empirical_q_half(const DistinguisherFactory& factory, unsigned n, unsigned m,
                                std::uint64_t max_q, std::uint64_t trials, std::uint64_t seed,
                                unsigned threads = 0);

}  // namespace truncdist

#endif
