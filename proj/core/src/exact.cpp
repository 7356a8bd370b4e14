#include "truncdist/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace truncdist {

namespace {

// fall(2^m, d) for d = 0..max_d; zero entries once d exceeds 2^m.
std::vector<Int> bucket_falling_table(const Params& params, std::uint64_t max_d) {
    std::vector<Int> table;
    table.reserve(static_cast<std::size_t>(max_d) + 1);
    table.push_back(1);
    Int acc = 1;
    const Int bucket = Int(params.bucket_capacity());
    for (std::uint64_t d = 1; d <= max_d; ++d) {
        Int f = bucket - Int(d - 1);
        acc = f > 0 ? Int(acc * f) : Int(0);
        table.push_back(acc);
    }
    return table;
}

// Numerator of P_p over the common denominator fall(2^n, q).
Int perm_numerator(const MultiplicityProfile& profile, const std::vector<Int>& fall_bucket) {
    Int num = 1;
    for (std::uint64_t d : profile.parts) {
        const Int& f = fall_bucket[static_cast<std::size_t>(d)];
        if (f == 0) return 0;
        num *= f;
    }
    return num;
}

}  // namespace

WorldProbabilities world_probabilities(const MultiplicityProfile& profile, const Params& params) {
    if (profile.total() != params.q)
        throw params_error("profile does not sum to q");
    if (std::uint64_t(params.reply_bits()) * params.q > (std::uint64_t(1) << 30))
        throw size_error("instance too large for exact world probabilities");
    Int num = 1;
    const Int bucket = Int(params.bucket_capacity());
    for (std::uint64_t d : profile.parts) num *= falling_factorial(bucket, d);
    const Int den = falling_factorial(Int(params.domain_size()), params.q);

    WorldProbabilities wp;
    wp.p_perm = Rat(num, den);
    wp.p_func = Rat(1, pow2_int(static_cast<unsigned>(params.reply_bits() * params.q)));
    wp.ratio = wp.p_perm / wp.p_func;
    return wp;
}

LogWorldProbabilities log_world_probabilities(const MultiplicityProfile& profile,
                                              const Params& params) {
    if (profile.total() != params.q)
        throw params_error("profile does not sum to q");
    const long double ln2 = 0.693147180559945309417232121458L;
    LogWorldProbabilities out;
    out.log_p_func = -static_cast<long double>(params.reply_bits() * params.q) * ln2;

    const long double bucket = static_cast<long double>(params.bucket_capacity());
    const long double domain = static_cast<long double>(params.domain_size());
    long double acc = 0;
    for (std::uint64_t d : profile.parts) {
        if (d > params.bucket_capacity()) {
            out.log_p_perm = -std::numeric_limits<long double>::infinity();
            return out;
        }
        for (std::uint64_t i = 0; i < d; ++i)
            acc += std::log(bucket - static_cast<long double>(i));
    }
    for (std::uint64_t i = 0; i < params.q; ++i)
        acc -= std::log(domain - static_cast<long double>(i));
    out.log_p_perm = acc;
    return out;
}

ExactAdvantageReport exact_advantage(const Params& params, std::uint64_t profile_limit) {
    const unsigned shift = static_cast<unsigned>(params.reply_bits() * params.q);
    const Int perm_den = falling_factorial(Int(params.domain_size()), params.q);
    const std::uint64_t max_d = params.q;
    const std::vector<Int> fall_bucket = bucket_falling_table(params, max_d);

    // advantage = (1/2) sum count * |num 2^s - D| / (D 2^s); accumulate the
    // integer numerator and reduce once at the end.
    Int tv_acc = 0, ml_acc = 0;
    ProfileEnumerator en(params, /*cap_parts_at_bucket=*/false, profile_limit);
    ProfileWeight w;
    while (en.next(w)) {
        Int num = perm_numerator(w.profile, fall_bucket);
        Int diff = (num << shift) - perm_den;
        if (diff >= 0) ml_acc += w.count * num;
        tv_acc += w.count * abs(diff);
    }

    ExactAdvantageReport report;
    report.advantage = Rat(tv_acc, 2 * (perm_den << shift));
    report.profiles_enumerated = en.emitted();
    report.ml_threshold_mass = Rat(ml_acc, perm_den);
    return report;
}

Rat brute_force_advantage(const Params& params) {
    const std::uint64_t alphabet = params.alphabet_size();
    double size = static_cast<double>(alphabet);
    for (std::uint64_t i = 1; i < params.q; ++i) {
        size *= static_cast<double>(alphabet);
        if (size > 1e6) throw size_error("brute force requires alphabet^q <= 10^6");
    }

    const std::uint64_t q = params.q;
    const unsigned shift = static_cast<unsigned>(params.reply_bits() * q);
    const Int bucket = Int(params.bucket_capacity());

    // Denominator fall(2^n, q) built by the sequential-draw view of the
    // permutation world: position i succeeds with prob (2^m - seen)/(2^n - i).
    Int perm_den = 1;
    for (std::uint64_t i = 0; i < q; ++i) perm_den *= Int(params.domain_size()) - Int(i);

    std::vector<std::uint64_t> omega(static_cast<std::size_t>(q), 0);
    std::vector<std::uint64_t> seen(static_cast<std::size_t>(alphabet), 0);
    Int tv_acc = 0;
    for (;;) {
        std::fill(seen.begin(), seen.end(), 0);
        Int num = 1;
        for (std::uint64_t i = 0; i < q; ++i) {
            // factor hits zero exactly when a bucket overflows, never negative
            num *= bucket - Int(seen[static_cast<std::size_t>(omega[static_cast<std::size_t>(i)])]);
            ++seen[static_cast<std::size_t>(omega[static_cast<std::size_t>(i)])];
        }
        tv_acc += abs((num << shift) - perm_den);

        // odometer over the alphabet^q cube
        std::size_t pos = 0;
        while (pos < q && ++omega[pos] == alphabet) omega[pos++] = 0;
        if (pos == q) break;
    }
    return Rat(tv_acc, 2 * (perm_den << shift));
}

GoodSetQuantities good_set_quantities(const Params& params, const GoodSetParams& s,
                                      std::uint64_t profile_limit) {
    GoodSetMembership membership(params, s);
    const unsigned shift = static_cast<unsigned>(params.reply_bits() * params.q);
    const Int perm_den = falling_factorial(Int(params.domain_size()), params.q);
    const std::vector<Int> fall_bucket = bucket_falling_table(params, params.q);

    Int max_dev_num = 0;       // max |num 2^s - D| over S
    Int func_out_count = 0;    // sum of counts outside S
    Int perm_out_num = 0;      // sum count*num outside S
    ProfileEnumerator en(params, /*cap_parts_at_bucket=*/false, profile_limit);
    ProfileWeight w;
    while (en.next(w)) {
        Int num = perm_numerator(w.profile, fall_bucket);
        if (membership.contains(w.profile)) {
            Int dev = abs((num << shift) - perm_den);
            if (dev > max_dev_num) max_dev_num = dev;
        } else {
            func_out_count += w.count;
            perm_out_num += w.count * num;
        }
    }

    GoodSetQuantities out;
    // ratio = num 2^s / D, so |ratio - 1| = |num 2^s - D| / D
    out.max_ratio_dev = Rat(max_dev_num, perm_den);
    out.func_mass_outside = Rat(func_out_count, pow2_int(shift));
    out.perm_mass_outside = Rat(perm_out_num, perm_den);
    return out;
}

}  // namespace truncdist
