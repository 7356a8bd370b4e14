#include "truncdist/profile.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

namespace truncdist {

MultiplicityProfile profile_of(const ReplySequence& omega) {
    MultiplicityProfile p;
    if (omega.empty()) return p;
    // Hash-count; alphabet may be up to 2^62 so no dense array here.
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    counts.reserve(omega.size() * 2);
    for (std::uint64_t s : omega) ++counts[s];
    p.parts.reserve(counts.size());
    for (const auto& [sym, c] : counts) p.parts.push_back(c);
    std::sort(p.parts.begin(), p.parts.end(), std::greater<>());
    return p;
}

Int collision_count(const MultiplicityProfile& profile, unsigned j) {
    Int total = 0;
    for (std::uint64_t d : profile.parts) {
        if (d < j) break;  // parts are non-increasing
        total += binomial(d, j);
    }
    return total;
}

std::vector<Int> collision_counts(const MultiplicityProfile& profile, unsigned j_max) {
    std::vector<Int> out;
    for (unsigned j = 2; j <= j_max; ++j) out.push_back(collision_count(profile, j));
    return out;
}

Rat expected_collision_count(const Params& params, unsigned j) {
    if (j < 2) throw params_error("collision order j must be >= 2");
    return Rat(binomial(params.q, j), pow2_int((j - 1) * params.reply_bits()));
}

Rat collision_variance_bound(const Params& params, unsigned j) {
    if (j < 2) throw params_error("collision order j must be >= 2");
    Rat base(binomial(std::uint64_t(j), std::uint64_t(2)) * binomial(params.q, j),
             pow2_int((j - 1) * params.reply_bits()));
    Rat growth = 1 + Rat(params.q, params.alphabet_size());
    Rat pw = 1;
    for (unsigned i = 0; i + 2 < j; ++i) pw *= growth;
    return base * pw;
}

namespace {
// Each profile stores up to q parts; above this even a single profile is
// beyond desk scale.
constexpr std::uint64_t kMaxEnumerationQ = 10'000'000;
}  // namespace

ProfileEnumerator::ProfileEnumerator(const Params& params, bool cap_parts_at_bucket,
                                     std::uint64_t profile_limit)
    : ProfileEnumerator(params.q, params.alphabet_size(),
                        cap_parts_at_bucket ? std::min(params.q, params.bucket_capacity())
                                            : params.q,
                        profile_limit) {}

ProfileEnumerator::ProfileEnumerator(std::uint64_t q, std::uint64_t alphabet,
                                     std::uint64_t max_part, std::uint64_t profile_limit)
    : q_(q), alphabet_(alphabet), max_part_(max_part), limit_(profile_limit) {
    if (q_ > kMaxEnumerationQ)
        throw size_error("q=" + std::to_string(q_) + " too large for profile enumeration");
    if (q_ < 1 || alphabet_ < 1 || max_part_ < 1)
        throw params_error("profile enumeration needs q, alphabet, max_part >= 1");
    max_len_ = std::min(q_, alphabet_);
    if (max_part_ < (q_ + max_len_ - 1) / max_len_)  // max_part * max_len < q, overflow-safe
        throw params_error("no profile fits: q > max_part * min(q, alphabet)");

    fall_alphabet_.push_back(1);

    // Greedy fill gives the lexicographically greatest partition and uses
    // the fewest possible parts, so it fits the length cap iff any
    // partition does.
    std::uint64_t rem = q_;
    while (rem > 0) {
        std::uint64_t part = std::min(rem, max_part_);
        parts_.push_back(part);
        rem -= part;
    }
}

bool ProfileEnumerator::advance() {
    // Successor in lexicographically decreasing order under a part-size cap
    // (implicit: successors only shrink parts) and a part-count cap.
    // Scan right to left for a part to decrement; refill the freed sum
    // greedily with parts no larger than the decremented value.
    std::uint64_t freed = 0;
    for (std::size_t i = parts_.size(); i-- > 0;) {
        freed += parts_[i];
        const std::uint64_t v = parts_[i] - 1;
        if (v == 0) continue;  // a 1 cannot shrink; absorb and move left
        const std::uint64_t tail = freed - v;
        const std::uint64_t slots = max_len_ - i - 1;  // positions after i
        // Decrementing further only increases tail and shrinks the fill
        // value, so if v does not fit no smaller value at i does either.
        if (slots * v >= tail) {
            parts_.resize(i);
            parts_.push_back(v);
            std::uint64_t rem = tail;
            while (rem > 0) {
                std::uint64_t part = std::min(rem, v);
                parts_.push_back(part);
                rem -= part;
            }
            return true;
        }
    }
    return false;
}

void ProfileEnumerator::compute_weight(ProfileWeight& out) {
    out.profile.parts = parts_;

    // Extend the fall(A, l) table on demand; lengths grow slowly in lex
    // order, so under any sane profile_limit this stays small.
    while (fall_alphabet_.size() <= parts_.size()) {
        fall_alphabet_.push_back(fall_alphabet_.back() *
                                 (Int(alphabet_) - Int(fall_alphabet_.size() - 1)));
    }

    // count = fall(A, l)/prod_v m_v! * q!/prod_k d_k!, computed per run of
    // equal parts; the multinomial goes through C(rem, d) so no factorial
    // table of q entries is ever materialized.
    Int count = fall_alphabet_[parts_.size()];
    Int multinomial = 1;
    std::uint64_t rem = q_;
    std::size_t i = 0;
    while (i < parts_.size()) {
        std::size_t run = i + 1;
        while (run < parts_.size() && parts_[run] == parts_[i]) ++run;
        const std::uint64_t value = parts_[i];
        const std::uint64_t mult = run - i;
        count /= factorial(mult);
        for (std::uint64_t k = 0; k < mult; ++k) {
            multinomial *= binomial(rem, value);
            rem -= value;
        }
        i = run;
    }
    out.count = count * multinomial;
}

long double log_profile_count(const MultiplicityProfile& profile, const Params& params) {
    if (profile.total() != params.q)
        throw params_error("profile does not sum to q");
    const long double alphabet = static_cast<long double>(params.alphabet_size());
    long double acc = std::lgamma(static_cast<long double>(params.q) + 1.0L);
    for (std::size_t i = 0; i < profile.parts.size(); ++i)
        acc += std::log(alphabet - static_cast<long double>(i));
    std::size_t i = 0;
    while (i < profile.parts.size()) {
        std::size_t run = i + 1;
        while (run < profile.parts.size() && profile.parts[run] == profile.parts[i]) ++run;
        acc -= std::lgamma(static_cast<long double>(run - i) + 1.0L);
        acc -= static_cast<long double>(run - i) *
               std::lgamma(static_cast<long double>(profile.parts[i]) + 1.0L);
        i = run;
    }
    return acc;
}

bool ProfileEnumerator::next(ProfileWeight& out) {
    if (done_) return false;
    if (fresh_) {
        fresh_ = false;
    } else if (!advance()) {
        done_ = true;
        return false;
    }
    if (++emitted_ > limit_)
        throw size_error("profile stream exceeds limit of " + std::to_string(limit_) +
                         " profiles (q=" + std::to_string(q_) + ")");
    compute_weight(out);
    return true;
}

}  // namespace truncdist
