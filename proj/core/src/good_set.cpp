#include "truncdist/good_set.hpp"

namespace truncdist {

void GoodSetParams::validate() const {
    if (t < 2) throw params_error("good set requires t >= 2");
    if (dev.size() != t - 1)
        throw params_error("good set needs one deviation threshold per collision order 2..t");
    for (const Rat& d : dev)
        if (d <= 0) throw params_error("good-set deviation thresholds must be positive");
    if (beta < 0) throw params_error("good-set beta must be non-negative");
}

GoodSetMembership::GoodSetMembership(const Params& params, GoodSetParams s) : s_(std::move(s)) {
    s_.validate();
    for (unsigned j = 2; j <= s_.t; ++j) {
        Rat mean = expected_collision_count(params, j);
        lower_.push_back(mean - s_.dev_for(j));
        upper_.push_back(mean + s_.dev_for(j));
    }
}

bool GoodSetMembership::contains(const MultiplicityProfile& profile) const {
    for (unsigned j = 2; j <= s_.t; ++j) {
        Rat c(collision_count(profile, j));
        if (c < lower_[j - 2] || c > upper_[j - 2]) return false;
    }
    return Rat(collision_count(profile, s_.t + 1)) <= s_.beta;
}

bool good_set_contains(const GoodSetParams& s, const Params& params,
                       const MultiplicityProfile& profile) {
    return GoodSetMembership(params, s).contains(profile);
}

}  // namespace truncdist
