#ifndef TRUNCDIST_EXACT_HPP
#define TRUNCDIST_EXACT_HPP

#include "truncdist/good_set.hpp"
#include "truncdist/numeric.hpp"
#include "truncdist/params.hpp"
#include "truncdist/profile.hpp"

#include <cstdint>

namespace truncdist {

/// Exact per-sequence probabilities of one reply sequence with the given
/// profile, in each world, plus their ratio.
struct WorldProbabilities {
    Rat p_perm;  // prod_k fall(2^m, d_k) / fall(2^n, q); zero iff a part exceeds 2^m
    Rat p_func;  // 2^(-(n-m)q)
    Rat ratio;   // p_perm / p_func
};

WorldProbabilities world_probabilities(const MultiplicityProfile& profile, const Params& params);

struct ExactAdvantageReport {
    Rat advantage;                     // (1/2) sum over sequences |P_p - P_F|
    std::uint64_t profiles_enumerated = 0;
    Rat ml_threshold_mass;             // P_p-mass of the ratio >= 1 region
};

/// Exact total-variation advantage by summing over multiplicity profiles
/// (the uncapped stream; profiles with a part above 2^m contribute their
/// full function-world mass).
ExactAdvantageReport exact_advantage(const Params& params,
                                     std::uint64_t profile_limit = kDefaultProfileLimit);

/// Same value computed by walking every reply sequence in the alphabet^q
/// cube with per-position conditional probabilities. Independent of the
/// profile-enumeration path; exists as a correctness oracle.
/// Requires alphabet^q <= 10^6.
Rat brute_force_advantage(const Params& params);

/// The three quantities of the good-set advantage decomposition.
struct GoodSetQuantities {
    Rat max_ratio_dev;       // max over profiles in S of |ratio - 1| (0 if S empty)
    Rat func_mass_outside;   // P_F(complement of S)
    Rat perm_mass_outside;   // P_p(complement of S)
};

GoodSetQuantities good_set_quantities(const Params& params, const GoodSetParams& s,
                                      std::uint64_t profile_limit = kDefaultProfileLimit);

/// Log-space per-sequence world probabilities (natural logs, sums of logs;
/// -inf when a part exceeds 2^m). Opt-in float path for instances beyond
/// exact-rational reach; never used inside exact-equality checks.
struct LogWorldProbabilities {
    long double log_p_perm;
    long double log_p_func;
};

LogWorldProbabilities log_world_probabilities(const MultiplicityProfile& profile,
                                              const Params& params);

}  // namespace truncdist

#endif
