#ifndef TRUNCDIST_GOOD_SET_HPP
#define TRUNCDIST_GOOD_SET_HPP

#include "truncdist/numeric.hpp"
#include "truncdist/params.hpp"
#include "truncdist/profile.hpp"

#include <cstdint>
#include <vector>

namespace truncdist {

/// Parameters of a "good set" S of reply sequences: every col_j for
/// 2 <= j <= t stays within dev(j) of its function-world mean, and
/// col_{t+1} is at most beta.
///
/// Thresholds are exact rationals; callers with float-valued choices
/// convert through rat_from_real, which is lossless for dyadic values, so
/// membership tests are exact. Deviation thresholds are indexed by the
/// collision order j they bound.
struct GoodSetParams {
    unsigned t = 2;
    std::vector<Rat> dev;  // dev[i] bounds |col_(i+2) - E col_(i+2)|, i = 0..t-2
    Rat beta = 0;          // cap on col_(t+1)

    const Rat& dev_for(unsigned j) const { return dev.at(j - 2); }

    /// Throws params_error unless t >= 2, dev has t-1 positive entries and
    /// beta >= 0.
    void validate() const;
};

/// Whether every sequence with this profile lies in S. Membership is
/// profile-measurable since each col_j factors through the profile.
bool good_set_contains(const GoodSetParams& s, const Params& params,
                       const MultiplicityProfile& profile);

/// Precomputed membership tester: function-world means and interval bounds
/// fixed once per (params, s).
class GoodSetMembership {
  public:
    GoodSetMembership(const Params& params, GoodSetParams s);

    bool contains(const MultiplicityProfile& profile) const;
    const GoodSetParams& good_set() const { return s_; }

  private:
    GoodSetParams s_;
    std::vector<Rat> lower_, upper_;  // per collision order 2..t
};

}  // namespace truncdist

#endif
