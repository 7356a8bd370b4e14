#ifndef TRUNCDIST_PROFILE_HPP
#define TRUNCDIST_PROFILE_HPP

#include "truncdist/numeric.hpp"
#include "truncdist/oracle.hpp"
#include "truncdist/params.hpp"

#include <cstdint>
#include <vector>

namespace truncdist {

/// Multiplicity profile of a reply sequence: the partition d_1 >= ... >= d_l
/// of q recording how often each distinct reply occurs. Both worlds'
/// likelihoods and every col_j statistic factor through this, so it is the
/// sufficient statistic for everything downstream.
struct MultiplicityProfile {
    std::vector<std::uint64_t> parts;  // non-increasing, all >= 1

    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto d : parts) s += d;
        return s;
    }
    std::uint64_t distinct_symbols() const { return parts.size(); }
    std::uint64_t max_part() const { return parts.empty() ? 0 : parts.front(); }

    bool operator==(const MultiplicityProfile&) const = default;
};

MultiplicityProfile profile_of(const ReplySequence& omega);

/// col_j: number of j-subsets of query positions holding equal replies,
/// i.e. sum over parts of C(d_k, j).
Int collision_count(const MultiplicityProfile& profile, unsigned j);

/// col_2 .. col_j_max as a vector (index 0 holds col_2).
std::vector<Int> collision_counts(const MultiplicityProfile& profile, unsigned j_max);

/// Function-world expectation of col_j: C(q, j) / 2^((j-1)(n-m)).
Rat expected_collision_count(const Params& params, unsigned j);

/// Function-world variance upper bound for col_j:
/// C(j,2) C(q,j) 2^(-(j-1)(n-m)) (1 + q/2^(n-m))^(j-2).
Rat collision_variance_bound(const Params& params, unsigned j);

/// A profile together with the exact number of reply sequences having it.
struct ProfileWeight {
    MultiplicityProfile profile;
    Int count;
};

inline constexpr std::uint64_t kDefaultProfileLimit = 10'000'000;

/// Streams every feasible profile for the instance in lexicographically
/// decreasing part order, with exact sequence counts:
///
///   count = A!/((A-l)! prod_v m_v!) * q!/prod_k d_k!
///
/// where A = 2^(n-m), l = number of parts and m_v = number of parts equal
/// to v. Part count is capped at min(q, A); part size at 2^m when
/// cap_parts_at_bucket (permutation-world support) and at q otherwise.
/// Sum of counts over the uncapped stream is exactly A^q.
///
/// Throws size_error when the stream would exceed profile_limit entries.
class ProfileEnumerator {
  public:
    ProfileEnumerator(const Params& params, bool cap_parts_at_bucket,
                      std::uint64_t profile_limit = kDefaultProfileLimit);

    /// Alphabet-generic core (the instance-independent combinatorics):
    /// partitions of q into at most min(q, alphabet) parts each <= max_part,
    /// counts relative to `alphabet` symbols.
    ProfileEnumerator(std::uint64_t q, std::uint64_t alphabet, std::uint64_t max_part,
                      std::uint64_t profile_limit = kDefaultProfileLimit);

    /// Produces the next profile; false when exhausted.
    bool next(ProfileWeight& out);

    std::uint64_t emitted() const { return emitted_; }

  private:
    void compute_weight(ProfileWeight& out);
    bool advance();

    std::uint64_t q_, alphabet_;
    std::uint64_t max_part_, max_len_, limit_;
    std::vector<std::uint64_t> parts_;
    std::vector<Int> fall_alphabet_;  // fall_alphabet_[l] = A(A-1)...(A-l+1)
    bool fresh_ = true, done_ = false;
    std::uint64_t emitted_ = 0;
};

/// Natural log of the exact sequence count of a profile, via sums of logs
/// (no factorial-difference cancellation). Opt-in float path for instances
/// beyond exact-rational reach; relative error on the log stays below
/// 1e-12 for q up to 10^6.
long double log_profile_count(const MultiplicityProfile& profile, const Params& params);

/// Convenience wrapper: applies fn to every ProfileWeight in stream order.
template <typename Fn>
void enumerate_profiles(const Params& params, bool cap_parts_at_bucket, Fn&& fn,
                        std::uint64_t profile_limit = kDefaultProfileLimit) {
    ProfileEnumerator en(params, cap_parts_at_bucket, profile_limit);
    ProfileWeight w;
    while (en.next(w)) fn(w);
}

}  // namespace truncdist

#endif
