#include "truncdist/verify.hpp"

#include "truncdist/bounds.hpp"
#include "truncdist/distinguish.hpp"
#include "truncdist/exact.hpp"
#include "truncdist/good_set.hpp"
#include "truncdist/numeric.hpp"
#include "truncdist/oracle.hpp"
#include "truncdist/parallel.hpp"
#include "truncdist/profile.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace truncdist::verify {

namespace {

using Checks = std::vector<CheckResult>;

struct Collector {
    std::string suite;
    Checks results;

    void add(const std::string& check, bool pass, const std::string& detail = "") {
        results.push_back({suite, check, pass, detail});
    }

    /// One aggregated line from many sub-assertions: records the first failure.
    struct Agg {
        bool pass = true;
        std::string first_failure;
        std::uint64_t checked = 0;

        void require(bool ok, const std::string& what) {
            ++checked;
            if (!ok && pass) {
                pass = false;
                first_failure = what;
            }
        }
    };

    void add(const std::string& check, const Agg& agg) {
        std::string detail = agg.pass ? std::to_string(agg.checked) + " cases"
                                      : agg.first_failure;
        results.push_back({suite, check, agg.pass, detail});
    }
};

std::string instance_str(const Params& p) {
    return "(n=" + std::to_string(p.n) + ",m=" + std::to_string(p.m) +
           ",q=" + std::to_string(p.q) + ")";
}

// ---------------------------------------------------------------------------
// Independent brute-force oracles. These deliberately avoid the profile
// enumeration and common combinatorics: sequences are walked directly and
// col_j is counted from its definition over j-subsets of positions.
// ---------------------------------------------------------------------------

template <typename Fn>
void for_each_sequence(std::uint64_t alphabet, std::uint64_t q, Fn&& fn) {
    std::vector<std::uint64_t> omega(static_cast<std::size_t>(q), 0);
    for (;;) {
        fn(const_cast<const std::vector<std::uint64_t>&>(omega));
        std::size_t pos = 0;
        while (pos < q && ++omega[pos] == alphabet) omega[pos++] = 0;
        if (pos == q) break;
    }
}

std::uint64_t definitional_collision_count(const std::vector<std::uint64_t>& omega, unsigned j) {
    const std::size_t q = omega.size();
    if (j > q) return 0;
    std::vector<std::size_t> idx(j);
    for (unsigned i = 0; i < j; ++i) idx[i] = i;
    std::uint64_t hits = 0;
    for (;;) {
        bool equal = true;
        for (unsigned i = 1; i < j; ++i) equal = equal && omega[idx[i]] == omega[idx[0]];
        hits += equal;
        // next ascending index tuple
        int i = static_cast<int>(j) - 1;
        while (i >= 0 && idx[static_cast<unsigned>(i)] == q - j + static_cast<unsigned>(i)) --i;
        if (i < 0) break;
        ++idx[static_cast<unsigned>(i)];
        for (unsigned k = static_cast<unsigned>(i) + 1; k < j; ++k) idx[k] = idx[k - 1] + 1;
    }
    return hits;
}

struct BruteMoments {
    Rat mean;
    Rat variance;
};

// Function-world moments of col_j over the uniform alphabet^q cube.
BruteMoments collision_moments_bruteforce(std::uint64_t alphabet, std::uint64_t q, unsigned j) {
    Int sum = 0, sum_sq = 0, total = 0;
    for_each_sequence(alphabet, q, [&](const std::vector<std::uint64_t>& omega) {
        std::uint64_t c = definitional_collision_count(omega, j);
        sum += c;
        sum_sq += Int(c) * Int(c);
        ++total;
    });
    BruteMoments out;
    out.mean = Rat(sum, total);
    out.variance = Rat(sum_sq, total) - out.mean * out.mean;
    return out;
}

// Per-sequence probabilities by the sequential-draw rule; membership from
// definitional col_j. Cross-checks good_set_quantities without profiles.
GoodSetQuantities good_set_quantities_bruteforce(const Params& params, const GoodSetParams& s) {
    s.validate();
    std::vector<Rat> mean(s.t + 2), lo(s.t + 2), hi(s.t + 2);
    for (unsigned j = 2; j <= s.t; ++j) {
        mean[j] = expected_collision_count(params, j);
        lo[j] = mean[j] - s.dev_for(j);
        hi[j] = mean[j] + s.dev_for(j);
    }
    const Int bucket = Int(params.bucket_capacity());
    const unsigned shift = static_cast<unsigned>(params.reply_bits() * params.q);
    Int perm_den = 1;
    for (std::uint64_t i = 0; i < params.q; ++i)
        perm_den *= Int(params.domain_size()) - Int(i);

    Int max_dev_num = 0, func_out = 0, perm_out_num = 0;
    std::vector<std::uint64_t> seen(static_cast<std::size_t>(params.alphabet_size()), 0);
    for_each_sequence(params.alphabet_size(), params.q, [&](const std::vector<std::uint64_t>& omega) {
        bool in_s = true;
        for (unsigned j = 2; j <= s.t && in_s; ++j) {
            Rat c(definitional_collision_count(omega, j));
            in_s = c >= lo[j] && c <= hi[j];
        }
        in_s = in_s && Rat(definitional_collision_count(omega, s.t + 1)) <= s.beta;

        std::fill(seen.begin(), seen.end(), 0);
        Int num = 1;
        for (std::uint64_t sym : omega) {
            num *= bucket - Int(seen[static_cast<std::size_t>(sym)]);
            ++seen[static_cast<std::size_t>(sym)];
        }
        if (in_s) {
            Int dev = abs((num << shift) - perm_den);
            if (dev > max_dev_num) max_dev_num = dev;
        } else {
            func_out += 1;
            perm_out_num += num;
        }
    });

    GoodSetQuantities out;
    out.max_ratio_dev = Rat(max_dev_num, perm_den);
    out.func_mass_outside = Rat(func_out, pow2_int(shift));
    out.perm_mass_outside = Rat(perm_out_num, perm_den);
    return out;
}

// ---------------------------------------------------------------------------
// Ratio-deviation propositions, exact rational checks.
// ---------------------------------------------------------------------------

// Premises for the t = 2 in-S ratio bound: q <= 2^(n-1),
//   a/2^m + (2/3) q^3/2^(2n) <= 1/2,
//   C(q,2)/2^(n-m) + a <= C(2^(m-1), 2),
//   b >= 2 C(q,3)/2^(2(n-m)).
bool ratio_prop_t2_premises(const Params& params, const Rat& alpha, const Rat& beta) {
    if (params.m < 1) return false;
    if (params.q > (std::uint64_t(1) << (params.n - 1))) return false;
    if (alpha / params.bucket_capacity() +
            Rat(2 * Int(params.q) * Int(params.q) * Int(params.q), 3 * pow2_int(2 * params.n)) >
        Rat(1, 2))
        return false;
    const Int half_bucket = pow2_int(params.m - 1);
    if (Rat(binomial(params.q, 2), params.alphabet_size()) + alpha >
        Rat(half_bucket * (half_bucket - 1), 2))
        return false;
    return beta >= Rat(2 * binomial(params.q, 3), pow2_int(2 * params.reply_bits()));
}

Rat ratio_prop_t2_rhs(const Params& params, const Rat& alpha, const Rat& beta) {
    return 2 * alpha / params.bucket_capacity() +
           Rat(2 * binomial(params.q, 2), pow2_int(params.n + params.m)) +
           4 * beta / pow2_int(2 * params.m);
}

// Premises for the general-t in-S ratio bound: m <= n-2, q <= 2^(n-1),
// 2 <= t <= 2^((m-1)/2)+1, the col_2 cap, the exact half-sum condition and
// the col_(t+1) floor on beta. The 2^((n-m)/2 (t-(n+m)/(n-m))) factor
// combines with 2^((n+m)(t+1)/2) to the integer power 2^(nt), so the check
// stays exact.
bool ratio_prop_general_premises(const Params& params, const GoodSetParams& s) {
    const unsigned t = s.t;
    if (params.m + 2 > params.n || params.m < 1) return false;
    if (params.q > (std::uint64_t(1) << (params.n - 1))) return false;
    if (Int(2) * Int(t - 1) * Int(t - 1) > pow2_int(params.m)) return false;

    const Int half_bucket = pow2_int(params.m - 1);
    if (Rat(binomial(params.q, 2), params.alphabet_size()) + s.dev_for(2) >
        Rat(half_bucket * (half_bucket - 1), 2))
        return false;

    Rat sum = Rat(4 * Int(params.q) * Int(params.q), pow2_int(2 * params.n));
    Int crowd = 1;
    for (unsigned i = 0; i < t + 1; ++i) crowd *= Int(2) * (Int(params.q) + Int(t - 1));
    sum += Rat(crowd, Int(2) * t * (t + 1) * pow2_int(params.n * t));
    for (unsigned j = 1; j <= t - 1; ++j)
        sum += Rat(factorial(j - 1), pow2_int(j * params.m)) * s.dev_for(j + 1);
    if (sum > Rat(1, 2)) return false;

    return s.beta >= Rat(2 * binomial(params.q, t + 1), pow2_int(t * params.reply_bits()));
}

Rat ratio_prop_general_rhs(const Params& params, const GoodSetParams& s) {
    const unsigned t = s.t;
    const Rat x2(Int(params.q) * Int(params.q), pow2_int(params.n + params.m));
    Rat spread = Rat(2 * Int(t - 1), params.bucket_capacity()) +
                 Rat(2 * Int(params.q), Int(params.domain_size()));
    Rat spread_pow = 1;
    for (unsigned i = 0; i + 2 < t; ++i) spread_pow *= spread;

    Rat rhs = 4 * (1 + spread_pow) * x2;
    rhs += 2 * (1 + Rat(4, params.bucket_capacity())) * s.dev_for(2) / params.bucket_capacity();
    for (unsigned j = 2; j <= t - 1; ++j)
        rhs += Rat((1 + pow2_int(j)) * factorial(j - 1), pow2_int(j * params.m)) * s.dev_for(j + 1);
    rhs += Rat(pow2_int(t) * factorial(t - 1), pow2_int(t * params.m)) * s.beta;
    return rhs;
}

// max |ratio - 1| over in-S profiles <= rhs, by uncapped enumeration.
bool in_s_ratio_bounded(const Params& params, const GoodSetParams& s, const Rat& rhs,
                        std::string* fail_detail) {
    GoodSetQuantities gq = good_set_quantities(params, s);
    if (gq.max_ratio_dev <= rhs) return true;
    if (fail_detail)
        *fail_detail = instance_str(params) + " max|ratio-1|=" +
                       decimal_string(gq.max_ratio_dev, 12) + " > rhs=" + decimal_string(rhs, 12);
    return false;
}

// ---------------------------------------------------------------------------
// Statistics helpers.
// ---------------------------------------------------------------------------

double chi_square_pvalue(const std::vector<std::uint64_t>& observed,
                         const std::vector<double>& probs, std::uint64_t total) {
    double stat = 0;
    std::size_t dof = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expected = probs[i] * static_cast<double>(total);
        if (expected <= 0) continue;
        const double d = static_cast<double>(observed[i]) - expected;
        stat += d * d / expected;
        ++dof;
    }
    if (dof < 2) return 1.0;
    boost::math::chi_squared_distribution<double> dist(static_cast<double>(dof - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

double two_sample_chi_square_pvalue(const std::vector<std::uint64_t>& a,
                                    const std::vector<std::uint64_t>& b) {
    double stat = 0;
    std::size_t dof = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double s = static_cast<double>(a[i] + b[i]);
        if (s <= 0) continue;
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        stat += d * d / s;  // equal sample sizes
        ++dof;
    }
    if (dof < 2) return 1.0;
    boost::math::chi_squared_distribution<double> dist(static_cast<double>(dof - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

// ---------------------------------------------------------------------------
// CLI respawn helper for determinism checks.
// ---------------------------------------------------------------------------

struct CliRun {
    int exit_code = -1;
    std::string output;
};

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    out += "'";
    return out;
}

CliRun run_cli(const std::string& cli, const std::vector<std::string>& args, unsigned threads) {
    std::string cmd = "TRUNCDIST_THREADS=" + std::to_string(threads) + " " + shell_quote(cli);
    for (const auto& a : args) cmd += " " + shell_quote(a);
    cmd += " 2>/dev/null";
    CliRun run;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return run;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) run.output.append(buf, got);
    int status = pclose(pipe);
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return run;
}

}  // namespace

// ===========================================================================
// Suites
// ===========================================================================

namespace {

Checks suite_moments(const VerifyOptions& opts) {
    Collector col{"moments", {}};
    Collector::Agg mean_agg, var_agg;
    for (unsigned nm : opts.nm_values) {
        // Moments depend on n and m only through n-m; smallest instance.
        Params base(nm + 8, 8, 1);  // moments depend only on n-m; leave q room
        const std::uint64_t alphabet = base.alphabet_size();
        for (std::uint64_t q = opts.q_lo; q <= opts.q_hi; ++q) {
            double cube = std::pow(static_cast<double>(alphabet), static_cast<double>(q));
            if (cube > 2e6) continue;
            Params p(nm + 8, 8, q);
            for (unsigned j = 2; j <= 4; ++j) {
                BruteMoments bm = collision_moments_bruteforce(alphabet, q, j);
                const std::string where =
                    "(n-m=" + std::to_string(nm) + ",q=" + std::to_string(q) +
                    ",j=" + std::to_string(j) + ")";
                mean_agg.require(bm.mean == expected_collision_count(p, j),
                                 where + " brute mean != closed form");
                var_agg.require(bm.variance <= collision_variance_bound(p, j),
                                where + " brute variance above bound");
            }
        }
    }
    col.add("mean matches closed form exactly", mean_agg);
    col.add("variance below closed-form bound", var_agg);
    return col.results;
}

Checks suite_exact(const VerifyOptions&) {
    Collector col{"exact", {}};

    {  // exact == brute force wherever the cube is walkable
        Collector::Agg agg;
        for (unsigned n = 2; n <= 4; ++n)
            for (unsigned m = 0; m < n; ++m)
                for (std::uint64_t q = 1; q <= 6 && q <= (std::uint64_t(1) << n); ++q) {
                    Params p(n, m, q);
                    double cube = std::pow(static_cast<double>(p.alphabet_size()),
                                           static_cast<double>(q));
                    if (cube > 1e6) continue;
                    agg.require(exact_advantage(p).advantage == brute_force_advantage(p),
                                instance_str(p) + " profile route != sequence route");
                }
        col.add("profile route equals sequence route", agg);
    }

    {  // m = 0 closed form
        Collector::Agg agg;
        for (unsigned n = 1; n <= 4; ++n)
            for (std::uint64_t q = 1; q <= (std::uint64_t(1) << n); ++q) {
                Params p(n, 0, q);
                agg.require(exact_advantage(p).advantage == birthday_exact_m0(n, q),
                            instance_str(p) + " != collision-test closed form");
            }
        col.add("m=0 advantage equals collision-test closed form", agg);
    }

    {  // q = 1 has no advantage
        Collector::Agg agg;
        for (auto [n, m] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {5, 2}, {8, 0}}) {
            Params p(n, m, 1);
            agg.require(exact_advantage(p).advantage == 0, instance_str(p) + " nonzero at q=1");
        }
        col.add("single truncated reply carries no advantage", agg);
    }

    {  // probability mass identities over profiles
        Collector::Agg agg;
        for (unsigned n = 2; n <= 6; ++n)
            for (unsigned m = 0; m < n; ++m)
                for (std::uint64_t q : {2ULL, 4ULL, 7ULL, 10ULL}) {
                    if (q > (std::uint64_t(1) << n)) continue;
                    Params p(n, m, q);
                    Int func_count = 0;
                    Rat perm_mass = 0;
                    enumerate_profiles(p, false, [&](const ProfileWeight& w) {
                        func_count += w.count;
                    });
                    enumerate_profiles(p, true, [&](const ProfileWeight& w) {
                        perm_mass += w.count * world_probabilities(w.profile, p).p_perm;
                    });
                    agg.require(func_count == pow(Int(p.alphabet_size()), static_cast<unsigned>(q)),
                                instance_str(p) + " function mass != A^q");
                    agg.require(perm_mass == 1, instance_str(p) + " permutation mass != 1");
                }
        col.add("profile counts carry full probability mass", agg);
    }

    {  // expectation identity and variance bound through the profile route
        Collector::Agg agg;
        for (unsigned nm : {1u, 2u, 3u})
            for (std::uint64_t q : {2ULL, 4ULL, 6ULL})
                for (unsigned j : {2u, 3u, 4u}) {
                    Params p(nm + 8, 8, q);
                    Rat mean = 0, second = 0;
                    const Int cube = pow(Int(p.alphabet_size()), static_cast<unsigned>(q));
                    enumerate_profiles(p, false, [&](const ProfileWeight& w) {
                        Rat c(collision_count(w.profile, j));
                        mean += Rat(w.count, cube) * c;
                        second += Rat(w.count, cube) * c * c;
                    });
                    const std::string where = instance_str(p) + " j=" + std::to_string(j);
                    agg.require(mean == expected_collision_count(p, j),
                                where + " profile-route mean mismatch");
                    agg.require(second - mean * mean <= collision_variance_bound(p, j),
                                where + " profile-route variance above bound");
                }
        col.add("collision moments via profiles match closed forms", agg);
    }

    {  // likelihood-ratio region attains the advantage
        Collector::Agg agg;
        for (unsigned n = 2; n <= 5; ++n)
            for (unsigned m = 0; m < n; ++m)
                for (std::uint64_t q : {2ULL, 3ULL, 5ULL}) {
                    if (q > (std::uint64_t(1) << n)) continue;
                    Params p(n, m, q);
                    Rat gain = 0;
                    enumerate_profiles(p, false, [&](const ProfileWeight& w) {
                        WorldProbabilities wp = world_probabilities(w.profile, p);
                        if (wp.p_perm >= wp.p_func) gain += w.count * (wp.p_perm - wp.p_func);
                    });
                    agg.require(gain == exact_advantage(p).advantage,
                                instance_str(p) + " ML region does not attain advantage");
                }
        col.add("ratio>=1 region attains the total-variation advantage", agg);
    }

    {  // monotone in q, antitone in m
        Collector::Agg agg;
        for (unsigned n = 2; n <= 5; ++n)
            for (unsigned m = 0; m < n; ++m) {
                Rat prev = 0;
                for (std::uint64_t q = 1; q <= std::min<std::uint64_t>(8, std::uint64_t(1) << n);
                     ++q) {
                    Rat adv = exact_advantage(Params(n, m, q)).advantage;
                    agg.require(adv >= prev, instance_str(Params(n, m, q)) + " decreased in q");
                    prev = adv;
                }
            }
        for (unsigned n = 2; n <= 5; ++n)
            for (std::uint64_t q : {2ULL, 4ULL}) {
                if (q > (std::uint64_t(1) << n)) continue;
                Rat prev = exact_advantage(Params(n, 0, q)).advantage;
                for (unsigned m = 1; m < n; ++m) {
                    Rat adv = exact_advantage(Params(n, m, q)).advantage;
                    agg.require(adv <= prev, instance_str(Params(n, m, q)) + " increased in m");
                    prev = adv;
                }
            }
        col.add("advantage monotone in q and antitone in m", agg);
    }

    {  // opt-in log-space path tracks the exact values
        Collector::Agg agg;
        for (unsigned n : {4u, 8u})
            for (std::uint64_t q : {4ULL, 10ULL}) {
                Params p(n, n / 2, q);
                enumerate_profiles(p, false, [&](const ProfileWeight& w) {
                    const long double lc = log_profile_count(w.profile, p);
                    signed long e = 0;
                    const double mant = mpz_get_d_2exp(&e, w.count.backend().data());
                    const long double ref =
                        std::log(std::fabs(mant)) + static_cast<long double>(e) * 0.6931471805599453L;
                    agg.require(std::fabs(lc - ref) <= 1e-12L * std::fabs(ref) + 1e-14L,
                                instance_str(p) + " log count off");
                    WorldProbabilities wp = world_probabilities(w.profile, p);
                    LogWorldProbabilities lw = log_world_probabilities(w.profile, p);
                    if (wp.p_perm > 0) {
                        const long double pref = std::log(static_cast<long double>(
                            static_cast<double>(real_from_rat(wp.p_perm))));
                        agg.require(std::fabs(lw.log_p_perm - pref) <=
                                        1e-10L * std::fabs(pref) + 1e-12L,
                                    instance_str(p) + " log p_perm off");
                    } else {
                        agg.require(std::isinf(static_cast<double>(lw.log_p_perm)),
                                    instance_str(p) + " log p_perm should be -inf");
                    }
                });
            }
        col.add("log-space weights track exact values", agg);
    }

    return col.results;
}

Checks suite_oracle(const VerifyOptions& opts) {
    Collector col{"oracle", {}};

    {  // full-exhaustion permutation, m = 0
        Params p(3, 0, 8);
        ReplySequence r = sample_reply_sequence(p, World::Permutation, opts.seed);
        std::set<std::uint64_t> uniq(r.begin(), r.end());
        col.add("m=0 exhaustive queries yield a permutation",
                r.size() == 8 && uniq.size() == 8);
    }

    {  // every truncation bucket fills exactly 2^m times
        Params p(2, 1, 4);
        bool ok = true;
        for (std::uint64_t s = 0; s < 64 && ok; ++s) {
            MultiplicityProfile prof = profile_of(sample_reply_sequence(p, World::Permutation, s));
            ok = prof.parts == std::vector<std::uint64_t>{2, 2};
        }
        col.add("buckets fill to capacity under exhaustion", ok);
    }

    {  // batch sampling == session on canonical queries; determinism
        Collector::Agg agg;
        for (auto [n, m, q] : std::vector<std::tuple<unsigned, unsigned, std::uint64_t>>{
                 {8, 3, 32}, {62, 10, 100}, {4, 2, 16}}) {
            Params p(n, m, q);
            for (World w : {World::Permutation, World::Function}) {
                ReplySequence batch = sample_reply_sequence(p, w, opts.seed);
                ReplySequence again = sample_reply_sequence(p, w, opts.seed);
                OracleSession session(p, w, opts.seed);
                ReplySequence via_session;
                for (std::uint64_t i = 0; i < q; ++i) via_session.push_back(session.query(i));
                agg.require(batch == again, instance_str(p) + " batch not deterministic");
                agg.require(batch == via_session, instance_str(p) + " session != batch");
            }
        }
        col.add("batch equals session and is deterministic", agg);
    }

    {  // function-world symbol frequencies within 4 sigma
        Params p(3, 1, 4);
        const std::uint64_t trials = 100000;
        std::vector<std::uint64_t> freq(static_cast<std::size_t>(p.alphabet_size()), 0);
        for (std::uint64_t i = 0; i < trials; ++i)
            for (std::uint64_t sym : sample_reply_sequence(p, World::Function, opts.seed + i))
                ++freq[static_cast<std::size_t>(sym)];
        const double draws = static_cast<double>(trials) * static_cast<double>(p.q);
        const double prob = 1.0 / static_cast<double>(p.alphabet_size());
        const double sigma = std::sqrt(draws * prob * (1 - prob));
        bool ok = true;
        for (std::uint64_t f : freq)
            ok = ok && std::fabs(static_cast<double>(f) - draws * prob) <= 4 * sigma;
        col.add("function-world symbols uniform within 4 sigma", ok,
                "N=" + std::to_string(trials));
    }

    {  // empirical col_2 distribution vs exact, both worlds
        Params p(4, 2, 4);
        const std::uint64_t trials = 100000;
        // exact col_2 laws from the profile route
        std::map<std::uint64_t, Rat> law_func, law_perm;
        const Int cube = pow(Int(p.alphabet_size()), static_cast<unsigned>(p.q));
        enumerate_profiles(p, false, [&](const ProfileWeight& w) {
            std::uint64_t c2 =
                static_cast<std::uint64_t>(collision_count(w.profile, 2));
            law_func[c2] += Rat(w.count, cube);
            law_perm[c2] += w.count * world_probabilities(w.profile, p).p_perm;
        });
        for (World w : {World::Function, World::Permutation}) {
            const auto& law = w == World::Function ? law_func : law_perm;
            std::vector<std::uint64_t> values;
            std::vector<double> probs;
            for (const auto& [v, pr] : law) {
                values.push_back(v);
                probs.push_back(static_cast<double>(real_from_rat(pr)));
            }
            std::vector<std::uint64_t> observed(values.size(), 0);
            for (std::uint64_t i = 0; i < trials; ++i) {
                MultiplicityProfile prof =
                    profile_of(sample_reply_sequence(p, w, opts.seed + 7919 * i));
                std::uint64_t c2 = static_cast<std::uint64_t>(collision_count(prof, 2));
                auto it = std::lower_bound(values.begin(), values.end(), c2);
                observed[static_cast<std::size_t>(it - values.begin())] += 1;
            }
            double pv = chi_square_pvalue(observed, probs, trials);
            col.add(std::string("col_2 law matches exact (") + world_name(w) + " world)",
                    pv > 1e-4, "p=" + std::to_string(pv));
        }
    }

    {  // query-set relabeling invariance (two disjoint sets, two-sample test)
        Params p(4, 2, 4);
        const std::uint64_t trials = 40000;
        const std::vector<std::uint64_t> set_a{0, 1, 2, 3}, set_b{5, 9, 11, 14};
        std::map<std::uint64_t, std::uint64_t> hist_a, hist_b;
        for (std::uint64_t i = 0; i < trials; ++i) {
            OracleSession sa(p, World::Permutation, opts.seed + 2 * i);
            OracleSession sb(p, World::Permutation, opts.seed + 2 * i + 1);
            ReplySequence ra, rb;
            for (std::uint64_t w : set_a) ra.push_back(sa.query(w));
            for (std::uint64_t w : set_b) rb.push_back(sb.query(w));
            ++hist_a[static_cast<std::uint64_t>(collision_count(profile_of(ra), 2))];
            ++hist_b[static_cast<std::uint64_t>(collision_count(profile_of(rb), 2))];
        }
        std::set<std::uint64_t> keys;
        for (auto& [k, v] : hist_a) keys.insert(k);
        for (auto& [k, v] : hist_b) keys.insert(k);
        std::vector<std::uint64_t> a, b;
        for (std::uint64_t k : keys) {
            a.push_back(hist_a.count(k) ? hist_a[k] : 0);
            b.push_back(hist_b.count(k) ? hist_b[k] : 0);
        }
        double pv = two_sample_chi_square_pvalue(a, b);
        col.add("reply law invariant under query relabeling", pv > 1e-4,
                "p=" + std::to_string(pv));
    }

    return col.results;
}

Checks suite_bounds(const VerifyOptions&) {
    Collector col{"bounds", {}};
    const Real slack("1e-12");

    {  // every applicable bound dominates the exact advantage
        Collector::Agg agg;
        for (unsigned n = 2; n <= 9; ++n)
            for (unsigned m = 0; m < n; ++m)
                for (std::uint64_t q : {2ULL, 4ULL, 8ULL, 16ULL, 24ULL}) {
                    if (q > (std::uint64_t(1) << n)) continue;
                    Params p(n, m, q);
                    const Real adv = real_from_rat(exact_advantage(p).advantage);
                    auto check = [&](const char* name, const BoundValue& b) {
                        if (!b.applicable) return;
                        agg.require(adv <= *b.value + slack,
                                    instance_str(p) + " exact above " + name);
                    };
                    check("birthday upper", birthday_bounds(p).upper);
                    check("hall", hall_bound(p));
                    check("stam", stam_bound(p));
                    check("small_m", small_m_bound(p));
                    check("large_m", large_m_bound(p));
                }
        col.add("bounds dominate exact advantage", agg);
    }

    {  // regime-specific bounds non-decreasing in q
        Collector::Agg agg;
        for (auto [n, m] : std::vector<std::pair<unsigned, unsigned>>{{12, 4}, {16, 8}, {18, 6}}) {
            Real prev = -1;
            for (std::uint64_t q = 1; q <= 4096; q *= 2) {
                BoundValue b = 3 * m <= n ? small_m_bound(Params(n, m, q))
                                          : large_m_bound(Params(n, m, q));
                agg.require(b.applicable && *b.value >= prev,
                            instance_str(Params(n, m, q)) + " bound decreased in q");
                prev = *b.value;
            }
        }
        col.add("regime bounds monotone in q", agg);
    }

    {  // the weaker closed form dominates the sharp one
        Collector::Agg agg;
        for (unsigned n : {4u, 10u, 16u})
            for (unsigned m = 0; m < n; m += 3)
                for (std::uint64_t q : {2ULL, 16ULL, 200ULL}) {
                    if (q > (std::uint64_t(1) << n)) continue;
                    Params p(n, m, q);
                    agg.require(*stam_bound_simplified(p).value + slack >= *stam_bound(p).value,
                                instance_str(p) + " simplified below sharp form");
                }
        col.add("simplified stam form dominates sharp form", agg);
    }

    {  // combined good-set lemma chain for the small-m analysis
        Collector::Agg agg;
        for (auto [n, m] : std::vector<std::pair<unsigned, unsigned>>{{18, 6}, {24, 8}, {24, 6}}) {
            for (std::uint64_t q : {8ULL, 16ULL, 32ULL, 40ULL}) {
                Params p(n, m, q);
                SmallMGoodSetChoice choice = small_m_good_set_choice(p);
                const Real rhs = small_m_combined_rhs(p, choice);
                const Real bound = *small_m_bound(p).value;
                agg.require(rhs <= bound + slack,
                            instance_str(p) + " combined rhs exceeds closed form");
                if (3 * m == n)
                    agg.require(abs(rhs - bound) <= slack * bound,
                                instance_str(p) + " chain not tight at m=n/3");
                if (q <= 40) {
                    const Real adv = real_from_rat(exact_advantage(p).advantage);
                    agg.require(adv <= rhs + slack,
                                instance_str(p) + " exact above combined rhs");
                }
            }
        }
        col.add("good-set combination dominates exact and meets closed form", agg);
    }

    {  // parameter selectors: regime boundaries are exact
        Collector::Agg agg;
        auto throws = [](auto&& fn) {
            try {
                fn();
                return false;
            } catch (const params_error&) {
                return true;
            }
        };
        agg.require(throws([] { small_m_good_set_choice(Params(30, 5, 16)); }), "m=5 accepted");
        agg.require(throws([] { small_m_good_set_choice(Params(18, 6, 1024)); }),
                    "q = 2^((n+m)/2)/4 boundary accepted");
        small_m_good_set_choice(Params(18, 6, 1023));  // must not throw
        agg.require(throws([] { large_m_good_set_choice(Params(18, 6, 8)); }),
                    "m <= n/3 accepted by large-m selector");
        agg.require(throws([] { large_m_good_set_choice(Params(16, 8, 512)); }),
                    "q = 2^((n+m)/2)/8 boundary accepted");
        large_m_good_set_choice(Params(16, 8, 511));  // must not throw
        agg.require(large_m_good_set_choice(Params(16, 8, 64)).t == 3, "(16,8) t != 3");
        agg.require(large_m_good_set_choice(Params(15, 6, 32)).t == 3, "(15,6) t != 3");
        col.add("selector regime boundaries exact", agg);
    }

    {  // q_half certificates
        Collector::Agg agg;
        QHalfCertificate bd = q_half_from_bound(BoundId::BirthdayUpper, 16, 0);
        agg.require(bd.applicable && bd.reached && bd.first_q_at_half == 257,
                    "birthday first_q at n=16: " + std::to_string(bd.first_q_at_half));
        for (auto [n, m] : std::vector<std::pair<unsigned, unsigned>>{{16, 0}, {16, 8}, {20, 10}}) {
            QHalfCertificate st = q_half_from_bound(BoundId::Stam, n, m);
            const double scale = std::pow(2.0, (n + m) / 2.0);
            const double ratio = static_cast<double>(st.first_q_at_half) / scale;
            agg.require(st.reached && ratio >= 0.25 && ratio <= 4.0,
                        "stam q_half scaling off at n=" + std::to_string(n) + ",m=" +
                            std::to_string(m) + ": ratio=" + std::to_string(ratio));
        }
        col.add("q_half certificates behave", agg);
    }

    return col.results;
}

Checks suite_goodset(const VerifyOptions&) {
    Collector col{"goodset", {}};

    {  // direct cube cross-check of the three quantities
        Params p(4, 1, 4);
        GoodSetParams s;
        s.t = 2;
        s.dev.push_back(1);
        s.beta = 0;
        GoodSetQuantities via_profiles = good_set_quantities(p, s);
        GoodSetQuantities via_cube = good_set_quantities_bruteforce(p, s);
        col.add("profile route equals sequence route",
                via_profiles.max_ratio_dev == via_cube.max_ratio_dev &&
                    via_profiles.func_mass_outside == via_cube.func_mass_outside &&
                    via_profiles.perm_mass_outside == via_cube.perm_mass_outside);
    }

    {  // S = Omega and S = empty edge cases
        Params p(4, 1, 4);
        GoodSetParams loose;
        loose.t = 2;
        loose.dev.push_back(Rat(binomial(p.q, 2)) + 1);
        loose.beta = Rat(binomial(p.q, 3)) + 1;
        GoodSetQuantities gq = good_set_quantities(p, loose);
        const Rat adv = exact_advantage(p).advantage;
        col.add("S=Omega: no outside mass and max dev dominates advantage",
                gq.func_mass_outside == 0 && gq.perm_mass_outside == 0 &&
                    adv <= gq.max_ratio_dev);

        GoodSetParams tight;
        tight.t = 2;
        tight.dev.push_back(Rat(1, 1000));  // E col_2 = 3/4 is never within 1/1000 of an integer
        tight.beta = 0;
        GoodSetQuantities gq2 = good_set_quantities(p, tight);
        col.add("S=empty: complement carries all function mass",
                gq2.func_mass_outside == 1 && gq2.max_ratio_dev == 0);
    }

    {  // decomposition inequality across a family of sets
        Collector::Agg agg;
        for (unsigned n : {4u, 6u, 8u})
            for (unsigned m : {1u, 2u})
                for (std::uint64_t q : {4ULL, 8ULL, 12ULL}) {
                    Params p(n, m, q);
                    const Rat adv = exact_advantage(p).advantage;
                    std::vector<GoodSetParams> sets;
                    sets.push_back(hall_good_set(p, 1.0));
                    sets.push_back(hall_good_set(p, 2.0));
                    GoodSetParams loose;
                    loose.t = 2;
                    loose.dev.push_back(Rat(binomial(p.q, 2)) + 1);
                    loose.beta = Rat(binomial(p.q, 3)) + 1;
                    sets.push_back(loose);
                    GoodSetParams tri;
                    tri.t = 3;
                    tri.dev.push_back(expected_collision_count(p, 2) + 1);
                    tri.dev.push_back(expected_collision_count(p, 3) + 1);
                    tri.beta = 1;
                    sets.push_back(tri);
                    for (const auto& s : sets) {
                        GoodSetQuantities gq = good_set_quantities(p, s);
                        agg.require(adv <= gq.max_ratio_dev + gq.func_mass_outside,
                                    instance_str(p) + " decomposition inequality violated");
                    }
                }
        col.add("advantage below max ratio deviation plus outside mass", agg);
    }

    {  // t=2 ratio proposition where its premises hold
        Collector::Agg agg;
        std::uint64_t verified = 0;
        for (auto [n, m] : std::vector<std::pair<unsigned, unsigned>>{{18, 6}, {24, 8}})
            for (std::uint64_t q : {8ULL, 16ULL, 32ULL, 40ULL}) {
                Params p(n, m, q);
                GoodSetParams s = to_good_set_params(small_m_good_set_choice(p));
                agg.require(ratio_prop_t2_premises(p, s.dev_for(2), s.beta),
                            instance_str(p) + " selector premises fail");
                std::string why;
                agg.require(in_s_ratio_bounded(p, s, ratio_prop_t2_rhs(p, s.dev_for(2), s.beta),
                                               &why),
                            why);
                ++verified;
            }
        col.add("t=2 in-S ratio bound holds with selector thresholds", agg);
    }

    {  // general-t ratio proposition, selector and manual parameters
        Collector::Agg agg;
        for (std::uint64_t q : {16ULL, 32ULL}) {
            Params p(16, 8, q);
            GoodSetParams s = to_good_set_params(large_m_good_set_choice(p));
            agg.require(ratio_prop_general_premises(p, s),
                        instance_str(p) + " selector premises fail");
            std::string why;
            agg.require(in_s_ratio_bounded(p, s, ratio_prop_general_rhs(p, s), &why), why);
        }
        {
            Params p(9, 4, 8);
            GoodSetParams s;
            s.t = 3;
            s.dev = {Rat(4), Rat(2)};
            s.beta = 1;
            agg.require(ratio_prop_general_premises(p, s),
                        instance_str(p) + " manual premises fail");
            std::string why;
            agg.require(in_s_ratio_bounded(p, s, ratio_prop_general_rhs(p, s), &why), why);
        }
        col.add("general-t in-S ratio bound holds", agg);
    }

    {  // chebyshev + markov cap on the outside function mass, exact
        Collector::Agg agg;
        auto outside_mass_capped = [&](const Params& p, const GoodSetParams& s) {
            if (s.beta == 0) return;  // markov term degenerates
            Rat cap = 0;
            for (unsigned j = 2; j <= s.t; ++j)
                cap += collision_variance_bound(p, j) / (s.dev_for(j) * s.dev_for(j));
            cap += expected_collision_count(p, s.t + 1) / s.beta;
            GoodSetQuantities gq = good_set_quantities(p, s);
            agg.require(gq.func_mass_outside <= cap,
                        instance_str(p) + " outside mass above chebyshev+markov cap");
        };
        for (auto [n, m] : std::vector<std::pair<unsigned, unsigned>>{{18, 6}, {24, 8}})
            for (std::uint64_t q : {8ULL, 16ULL, 32ULL})
                outside_mass_capped(Params(n, m, q),
                                    to_good_set_params(small_m_good_set_choice(Params(n, m, q))));
        for (std::uint64_t q : {16ULL, 32ULL})
            outside_mass_capped(Params(16, 8, q),
                                to_good_set_params(large_m_good_set_choice(Params(16, 8, q))));
        col.add("outside mass below chebyshev+markov cap", agg);
    }

    return col.results;
}

Checks suite_mc(const VerifyOptions& opts) {
    Collector col{"mc", {}};

    {  // likelihood ratio converges to the exact advantage
        Params p(2, 1, 2);
        Distinguisher lr = Distinguisher::likelihood_ratio(p);
        AdvEstimate est = mc_advantage(lr, std::max<std::uint64_t>(opts.trials, 50000),
                                       opts.seed, opts.threads);
        const double exact = static_cast<double>(real_from_rat(exact_advantage(p).advantage));
        col.add("lr estimate covers exact value", std::fabs(est.point - exact) <= est.ci_half_width,
                "point=" + std::to_string(est.point) + " exact=" + std::to_string(exact) +
                    " ci=" + std::to_string(est.ci_half_width));
    }

    {  // constant rule has zero advantage
        Params p(4, 1, 4);
        Distinguisher constant = Distinguisher::col2_threshold(p, Rat(0));  // always "function"
        AdvEstimate est = mc_advantage(constant, 20000, opts.seed, opts.threads);
        col.add("constant guess estimates zero",
                est.perm_hits == 0 && est.func_hits == 0 && est.point == 0.0);
    }

    {  // no rule beats the likelihood ratio
        Collector::Agg agg;
        Params p(4, 1, 4);
        const double exact = static_cast<double>(real_from_rat(exact_advantage(p).advantage));
        std::vector<Distinguisher> rules;
        rules.push_back(Distinguisher::likelihood_ratio(p));
        rules.push_back(Distinguisher::col2_threshold(
            p, expected_collision_count(p, 2) + rat_from_double(0.5)));
        rules.push_back(Distinguisher::good_set_membership(p, hall_good_set(p, 1.0)));
        for (const auto& d : rules) {
            AdvEstimate est = mc_advantage(d, 40000, opts.seed + 3, opts.threads);
            agg.require(est.point <= exact + est.ci_half_width,
                        d.name() + " point=" + std::to_string(est.point) +
                            " above exact=" + std::to_string(exact));
        }
        col.add("no distinguisher beats the exact optimum", agg);
    }

    {  // worker count does not change results
        Params p(6, 2, 16);
        Distinguisher lr = Distinguisher::likelihood_ratio(p);
        AdvEstimate one = mc_advantage(lr, 20000, opts.seed, 1);
        AdvEstimate many = mc_advantage(lr, 20000, opts.seed, 5);
        col.add("estimates identical across worker counts",
                one.perm_hits == many.perm_hits && one.func_hits == many.func_hits &&
                    one.point == many.point);
    }

    {  // decisions factor through the profile (permutation invariance)
        Collector::Agg agg;
        Params p(6, 2, 12);
        std::vector<Distinguisher> rules;
        rules.push_back(Distinguisher::likelihood_ratio(p));
        rules.push_back(Distinguisher::col2_threshold(
            p, expected_collision_count(p, 2) + rat_from_double(1.0)));
        rules.push_back(Distinguisher::good_set_membership(p, hall_good_set(p, 1.5)));
        SplitMix64 shuffler(opts.seed);
        for (std::uint64_t i = 0; i < 50; ++i) {
            ReplySequence omega = sample_reply_sequence(
                p, i % 2 ? World::Permutation : World::Function, opts.seed + i);
            ReplySequence shuffled = omega;
            for (std::size_t k = shuffled.size(); k > 1; --k)
                std::swap(shuffled[k - 1],
                          shuffled[static_cast<std::size_t>(shuffler.next() % k)]);
            for (const auto& d : rules)
                agg.require(d.decide(omega) == d.decide(shuffled),
                            d.name() + " not invariant under reply permutation");
        }
        col.add("decisions invariant under permuting replies", agg);
    }

    {  // under-powered search reports not-reached
        EmpiricalQHalf eq = empirical_q_half(
            [](const Params& p) { return Distinguisher::likelihood_ratio(p); }, 8, 2,
            /*max_q=*/4, /*trials=*/10, opts.seed, opts.threads);
        col.add("unresolvable search reports not-reached", !eq.reached);
    }

    return col.results;
}

Checks suite_crossover(const VerifyOptions&) {
    Collector col{"crossover", {}};
    Collector::Agg agg;
    std::ostringstream tbl;
    tbl << "m hall birthday;";
    for (unsigned m : {9u, 10u, 12u, 16u}) {
        QHalfCertificate hall = q_half_from_bound(BoundId::Hall, 32, m);
        QHalfCertificate bday = q_half_from_bound(BoundId::BirthdayUpper, 32, m);
        tbl << " " << m << " " << hall.first_q_at_half << " " << bday.first_q_at_half << ";";
        agg.require(hall.applicable && bday.applicable && hall.reached && bday.reached,
                    "m=" + std::to_string(m) + " certificate missing");
        agg.require(hall.first_q_at_half < bday.first_q_at_half,
                    "m=" + std::to_string(m) + " hall certifies past birthday");
    }
    if (agg.pass) agg.first_failure = tbl.str();
    col.results.push_back({col.suite, "hall certifies less than birthday for m > n/4 at n=32",
                           agg.pass, agg.pass ? tbl.str() : agg.first_failure});
    return col.results;
}

Checks suite_scaling(const VerifyOptions& opts) {
    Collector col{"scaling", {}};
    Collector::Agg agg;
    auto lr_factory = [](const Params& p) { return Distinguisher::likelihood_ratio(p); };

    // exact m=0 reference from the closed form
    std::uint64_t exact_q_half = 0;
    for (std::uint64_t q = 2; q <= (std::uint64_t(1) << 16); ++q) {
        if (birthday_exact_m0(16, q) >= Rat(1, 2)) {
            exact_q_half = q;
            break;
        }
    }
    agg.require(exact_q_half > 0, "closed-form scan failed");

    std::map<unsigned, std::uint64_t> q_half;
    for (unsigned m : {0u, 4u, 8u}) {
        EmpiricalQHalf eq = empirical_q_half(lr_factory, 16, m, std::uint64_t(1) << 16,
                                             opts.trials, opts.seed, opts.threads);
        agg.require(eq.reached, "m=" + std::to_string(m) + " search did not resolve");
        if (!eq.reached) continue;
        q_half[m] = eq.q_half;
        const double ratio =
            static_cast<double>(eq.q_half) / std::pow(2.0, (16.0 + m) / 2.0);
        agg.require(ratio >= 0.25 && ratio <= 8.0,
                    "m=" + std::to_string(m) + " q_half/2^((n+m)/2)=" + std::to_string(ratio));
    }
    if (q_half.count(0)) {
        const double rel = static_cast<double>(q_half[0]) / static_cast<double>(exact_q_half);
        agg.require(rel >= 0.5 && rel <= 2.0,
                    "m=0 empirical " + std::to_string(q_half[0]) + " vs exact " +
                        std::to_string(exact_q_half));
    }
    for (unsigned m : {0u, 4u}) {
        if (!q_half.count(m) || !q_half.count(m + 4)) continue;
        const double step =
            static_cast<double>(q_half[m + 4]) / static_cast<double>(q_half[m]);
        agg.require(step >= 2.0 && step <= 8.0,
                    "q_half step m=" + std::to_string(m) + "->" + std::to_string(m + 4) + " is " +
                        std::to_string(step));
    }
    col.add("empirical q_half follows the 2^((n+m)/2) scale", agg);
    return col.results;
}

Checks suite_determinism(const VerifyOptions& opts) {
    Collector col{"determinism", {}};
    if (opts.cli_path.empty()) {
        col.add("cli output byte-identical across thread caps", false,
                "no CLI path provided (set TRUNCDIST_CLI or --cli)");
        return col.results;
    }
    {
        std::vector<std::string> args{"exact", "--n", "4",  "--m",      "1",
                                      "--q",   "2..6", "--format", "csv", "--no-timing"};
        CliRun a = run_cli(opts.cli_path, args, 1);
        CliRun b = run_cli(opts.cli_path, args, 7);
        col.add("exact csv byte-identical across thread caps",
                a.exit_code == 0 && b.exit_code == 0 && !a.output.empty() &&
                    a.output == b.output);
    }
    {
        std::vector<std::string> args{"mc",      "--distinguisher", "lr",     "--n",
                                      "8",       "--m",             "2",      "--q",
                                      "32",      "--trials",        "20000",  "--seed",
                                      "7",       "--format",        "json",   "--no-timestamp"};
        CliRun a = run_cli(opts.cli_path, args, 1);
        CliRun b = run_cli(opts.cli_path, args, 7);
        col.add("mc json byte-identical across thread caps",
                a.exit_code == 0 && b.exit_code == 0 && !a.output.empty() &&
                    a.output == b.output);
    }
    return col.results;
}

}  // namespace

// ===========================================================================
// Acceptance battery: pinned sizes, tolerances and seeds.
// ===========================================================================

namespace {

// Shared grid for the domination criteria: >= 200 instances, every profile
// stream below 10^6 entries.
std::vector<Params> domination_grid() {
    std::vector<Params> grid;
    for (unsigned n : {4u, 6u, 8u, 10u, 12u}) {
        std::set<unsigned> ms{0u, 1u, 2u, n / 3, n / 2, n - 2, n - 1};
        for (unsigned m : ms) {
            if (m >= n) continue;
            for (std::uint64_t q : {2ULL, 3ULL, 4ULL, 6ULL, 8ULL, 12ULL, 16ULL, 24ULL, 32ULL, 40ULL}) {
                if (q > (std::uint64_t(1) << n)) continue;
                grid.emplace_back(n, m, q);
            }
        }
    }
    // larger n rows so the large-m regime is populated
    for (auto [n, lo, hi] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{16, 6, 8},
                                                                                  {18, 7, 9}})
        for (unsigned m = lo; m <= hi; ++m)
            for (std::uint64_t q : {2ULL, 4ULL, 8ULL, 16ULL, 32ULL, 40ULL})
                grid.emplace_back(n, m, q);
    return grid;
}

CheckResult criterion(int id, const std::string& name, const Collector::Agg& agg) {
    return {"acceptance", "criterion " + std::to_string(id) + ": " + name, agg.pass,
            agg.pass ? std::to_string(agg.checked) + " cases" : agg.first_failure};
}

}  // namespace

std::vector<CheckResult> run_acceptance(const VerifyOptions& opts) {
    Checks out;

    {  // 1. exact vs brute force, exact equality
        Collector::Agg agg;
        for (unsigned n = 2; n <= 4; ++n)
            for (unsigned m = 0; m < n; ++m)
                for (std::uint64_t q = 1; q <= 6; ++q) {
                    if (q > (std::uint64_t(1) << n)) continue;
                    Params p(n, m, q);
                    double cube =
                        std::pow(static_cast<double>(p.alphabet_size()), static_cast<double>(q));
                    if (cube > 1e6) continue;
                    agg.require(exact_advantage(p).advantage == brute_force_advantage(p),
                                instance_str(p) + " mismatch");
                }
        out.push_back(criterion(1, "exact equals brute-force advantage", agg));
    }

    {  // 2. m=0 closed form, exact equality
        Collector::Agg agg;
        for (unsigned n = 1; n <= 4; ++n)
            for (std::uint64_t q = 1; q <= (std::uint64_t(1) << n); ++q)
                agg.require(exact_advantage(Params(n, 0, q)).advantage == birthday_exact_m0(n, q),
                            "(n=" + std::to_string(n) + ",q=" + std::to_string(q) + ") mismatch");
        out.push_back(criterion(2, "m=0 advantage equals collision-test closed form", agg));
    }

    const std::vector<Params> grid = domination_grid();
    std::map<std::uint64_t, Rat> grid_adv;  // keyed by packed (n,m,q)
    auto key = [](const Params& p) {
        return (std::uint64_t(p.n) << 40) | (std::uint64_t(p.m) << 32) | p.q;
    };
    {
        std::vector<Rat> advs(grid.size());
        parallel_chunks(grid.size(), resolve_threads(opts.threads),
                        [&](std::uint64_t b, std::uint64_t e, unsigned) {
                            for (std::uint64_t i = b; i < e; ++i)
                                advs[i] = exact_advantage(grid[i]).advantage;
                        });
        for (std::size_t i = 0; i < grid.size(); ++i) grid_adv[key(grid[i])] = advs[i];
    }

    {  // 3. stam domination on the grid
        Collector::Agg agg;
        const Real slack("1e-12");
        for (const Params& p : grid) {
            BoundValue st = stam_bound(p);
            agg.require(st.applicable &&
                            real_from_rat(grid_adv[key(p)]) <= *st.value + slack,
                        instance_str(p) + " exact above stam");
        }
        agg.require(agg.checked >= 200, "grid smaller than 200 instances");
        out.push_back(criterion(3, "stam bound dominates exact advantage", agg));
    }

    {  // 4. regime bounds dominate wherever applicable
        Collector::Agg agg;
        const Real slack("1e-12");
        std::uint64_t small_hits = 0, large_hits = 0;
        for (const Params& p : grid) {
            const Real adv = real_from_rat(grid_adv[key(p)]);
            BoundValue sm = small_m_bound(p);
            if (sm.applicable) {
                ++small_hits;
                agg.require(adv <= *sm.value + slack, instance_str(p) + " exact above small_m");
            }
            BoundValue lg = large_m_bound(p);
            if (lg.applicable) {
                ++large_hits;
                agg.require(adv <= *lg.value + slack, instance_str(p) + " exact above large_m");
            }
        }
        agg.require(small_hits >= 50 && large_hits >= 20,
                    "regime coverage too thin: small=" + std::to_string(small_hits) +
                        " large=" + std::to_string(large_hits));
        out.push_back(criterion(4, "regime bounds dominate exact advantage", agg));
    }

    {  // 5. collision moments, exact
        Collector::Agg agg;
        for (unsigned nm : {1u, 2u})
            for (std::uint64_t q = 2; q <= 6; ++q)
                for (unsigned j : {2u, 3u, 4u}) {
                    Params p(nm + 8, 8, q);
                    BruteMoments bm = collision_moments_bruteforce(p.alphabet_size(), q, j);
                    const std::string where = "(n-m=" + std::to_string(nm) +
                                              ",q=" + std::to_string(q) +
                                              ",j=" + std::to_string(j) + ")";
                    agg.require(bm.mean == expected_collision_count(p, j), where + " mean");
                    agg.require(bm.variance <= collision_variance_bound(p, j), where + " var");
                }
        out.push_back(criterion(5, "collision moment formulas exact", agg));
    }

    {  // 6. decomposition inequality + in-S ratio bounds, >= 50 pairs
        Collector::Agg agg;
        std::uint64_t pairs = 0;
        auto check_pair = [&](const Params& p, const GoodSetParams& s, const Rat& adv) {
            ++pairs;
            GoodSetQuantities gq = good_set_quantities(p, s);
            agg.require(adv <= gq.max_ratio_dev + gq.func_mass_outside,
                        instance_str(p) + " decomposition violated");
            if (s.t == 2 && ratio_prop_t2_premises(p, s.dev_for(2), s.beta)) {
                std::string why;
                agg.require(in_s_ratio_bounded(p, s, ratio_prop_t2_rhs(p, s.dev_for(2), s.beta),
                                               &why),
                            why);
            }
            if (s.t >= 3 && ratio_prop_general_premises(p, s)) {
                std::string why;
                agg.require(in_s_ratio_bounded(p, s, ratio_prop_general_rhs(p, s), &why), why);
            }
        };
        for (unsigned n : {4u, 6u, 8u})
            for (unsigned m : {1u, 2u})
                for (std::uint64_t q : {4ULL, 8ULL, 12ULL}) {
                    Params p(n, m, q);
                    const Rat adv = exact_advantage(p).advantage;
                    check_pair(p, hall_good_set(p, 1.0), adv);
                    check_pair(p, hall_good_set(p, 2.0), adv);
                    GoodSetParams loose;
                    loose.t = 2;
                    loose.dev.push_back(Rat(binomial(p.q, 2)) + 1);
                    loose.beta = Rat(binomial(p.q, 3)) + 1;
                    check_pair(p, loose, adv);
                }
        for (auto [n, m] : std::vector<std::pair<unsigned, unsigned>>{{18, 6}, {24, 8}})
            for (std::uint64_t q : {8ULL, 16ULL, 32ULL, 40ULL}) {
                Params p(n, m, q);
                GoodSetParams s = to_good_set_params(small_m_good_set_choice(p));
                agg.require(ratio_prop_t2_premises(p, s.dev_for(2), s.beta),
                            instance_str(p) + " selector premises fail");
                check_pair(p, s, exact_advantage(p).advantage);
            }
        for (std::uint64_t q : {16ULL, 32ULL}) {
            Params p(16, 8, q);
            GoodSetParams s = to_good_set_params(large_m_good_set_choice(p));
            agg.require(ratio_prop_general_premises(p, s),
                        instance_str(p) + " selector premises fail");
            check_pair(p, s, exact_advantage(p).advantage);
        }
        agg.require(pairs >= 50, "only " + std::to_string(pairs) + " pairs");
        out.push_back(criterion(6, "good-set decomposition and ratio bounds", agg));
    }

    {  // 7a. CI calibration at (8,2,64), 10 repetitions, 10^5 trials
        Collector::Agg agg;
        Params p(8, 2, 64);
        const double exact = static_cast<double>(real_from_rat(exact_advantage(p).advantage));
        Distinguisher lr = Distinguisher::likelihood_ratio(p);
        unsigned covered = 0;
        for (std::uint64_t rep = 1; rep <= 10; ++rep) {
            AdvEstimate est = mc_advantage(lr, 100000, rep, opts.threads);
            covered += std::fabs(est.point - exact) <= est.ci_half_width;
        }
        agg.require(covered >= 9, "exact value covered in only " + std::to_string(covered) +
                                      "/10 repetitions");
        out.push_back(criterion(7, "monte carlo calibration (a) and q_half scaling (b)", agg));

        // 7b shares the criterion line; failures append detail
        Checks scaling = suite_scaling(opts);
        CheckResult& line = out.back();
        for (const CheckResult& r : scaling) {
            if (!r.pass) {
                line.pass = false;
                line.detail = r.detail;
            }
        }
        if (line.pass) line.detail += "; scaling ok";
    }

    {  // 8. hall certifies below birthday for m > n/4 at n = 32
        Checks cross = suite_crossover(opts);
        out.push_back({"acceptance", "criterion 8: hall-vs-birthday crossover", cross[0].pass,
                       cross[0].detail});
    }

    {  // 9. CLI byte determinism across thread caps
        Checks det = suite_determinism(opts);
        bool pass = !det.empty();
        std::string detail;
        for (const CheckResult& r : det) {
            pass = pass && r.pass;
            if (!r.pass) detail = r.detail.empty() ? r.check : r.detail;
        }
        out.push_back({"acceptance", "criterion 9: deterministic cli output", pass, detail});
    }

    return out;
}

// ===========================================================================
// Suite registry
// ===========================================================================

namespace {

const std::vector<std::pair<std::string, Checks (*)(const VerifyOptions&)>>& registry() {
    static const std::vector<std::pair<std::string, Checks (*)(const VerifyOptions&)>> suites{
        {"moments", suite_moments},   {"exact", suite_exact},
        {"oracle", suite_oracle},     {"bounds", suite_bounds},
        {"goodset", suite_goodset},   {"mc", suite_mc},
        {"crossover", suite_crossover}, {"scaling", suite_scaling},
        {"determinism", suite_determinism},
    };
    return suites;
}

std::string canonical_suite(const std::string& name) {
    if (name == "lemma1") return "moments";
    if (name == "advantage") return "goodset";
    return name;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    names.push_back("acceptance");
    names.push_back("all");
    return names;
}

bool suite_exists(const std::string& name) {
    const std::string canon = canonical_suite(name);
    if (canon == "all" || canon == "acceptance") return true;
    for (const auto& [n, fn] : registry())
        if (n == canon) return true;
    return false;
}

std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& options) {
    const std::string canon = canonical_suite(name);
    if (canon == "acceptance") return run_acceptance(options);
    Checks out;
    for (const auto& [n, fn] : registry()) {
        if (canon == "all" || canon == n) {
            Checks r = fn(options);
            out.insert(out.end(), r.begin(), r.end());
        }
    }
    if (out.empty()) throw params_error("unknown verify suite: " + name);
    return out;
}

}  // namespace truncdist::verify
