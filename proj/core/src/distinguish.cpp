#include "truncdist/distinguish.hpp"

#include "truncdist/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace truncdist {

namespace {
// Distinguishers are evaluated per Monte Carlo trial; beyond this q the
// precomputed tables stop being desk-scale.
constexpr std::uint64_t kMaxDecisionQ = std::uint64_t(1) << 22;
constexpr long double kLn2 = 0.693147180559945309417232121458L;
}  // namespace

struct Distinguisher::LrTables {
    std::vector<long double> ln_fall_bucket;  // index d: ln prod_{i<d}(2^m - i)
    long double log_base = 0;                 // s ln2 - ln fall(2^n, q)
    long double margin = 0;                   // certified float-error bound
    Int perm_den;                             // fall(2^n, q)
    unsigned shift = 0;                       // (n-m) q
};

Distinguisher Distinguisher::likelihood_ratio(const Params& params) {
    if (params.q > kMaxDecisionQ)
        throw size_error("likelihood-ratio distinguisher supports q <= 2^22");
    auto tables = std::make_shared<LrTables>();

    const std::uint64_t max_d = std::min(params.q, params.bucket_capacity());
    tables->ln_fall_bucket.resize(static_cast<std::size_t>(max_d) + 1, 0.0L);
    const long double bucket = static_cast<long double>(params.bucket_capacity());
    long double acc = 0.0L;
    for (std::uint64_t d = 1; d <= max_d; ++d) {
        acc += std::log(bucket - static_cast<long double>(d - 1));
        tables->ln_fall_bucket[static_cast<std::size_t>(d)] = acc;
    }

    const long double domain = static_cast<long double>(params.domain_size());
    long double ln_den = 0.0L, comp = 0.0L;  // Kahan: q may reach millions
    for (std::uint64_t i = 0; i < params.q; ++i) {
        long double term = std::log(domain - static_cast<long double>(i)) - comp;
        long double sum = ln_den + term;
        comp = (sum - ln_den) - term;
        ln_den = sum;
    }
    tables->log_base =
        static_cast<long double>(params.reply_bits() * params.q) * kLn2 - ln_den;
    tables->perm_den = falling_factorial(Int(params.domain_size()), params.q);
    tables->shift = static_cast<unsigned>(params.reply_bits() * params.q);

    // Worst-case accumulated rounding: ~(q + parts) terms of magnitude up to
    // 2 q n ln2, each within a few ulps. 8x headroom on top.
    const long double mag = std::max<long double>(1.0L, 2.0L * params.q * params.n * kLn2);
    tables->margin = 8.0L * 0x1p-63L * static_cast<long double>(params.q + 64) * mag;

    Distinguisher d(params, Kind::LikelihoodRatio);
    d.lr_ = std::move(tables);
    return d;
}

Distinguisher Distinguisher::col2_threshold(const Params& params, const Rat& theta) {
    if (params.q > kMaxDecisionQ)
        throw size_error("col2-threshold distinguisher supports q <= 2^22");
    Distinguisher d(params, Kind::Col2Threshold);
    d.col2_threshold_int_ = ceil_rat(theta);
    return d;
}

Distinguisher Distinguisher::good_set_membership(const Params& params, GoodSetParams s) {
    if (params.q > kMaxDecisionQ)
        throw size_error("good-set distinguisher supports q <= 2^22");
    Distinguisher d(params, Kind::GoodSetMembership);
    d.membership_ = std::make_shared<GoodSetMembership>(params, std::move(s));
    return d;
}

std::string Distinguisher::name() const {
    switch (kind_) {
        case Kind::LikelihoodRatio: return "lr";
        case Kind::Col2Threshold: return "col2";
        case Kind::GoodSetMembership: return "goodset";
    }
    return "?";
}

World Distinguisher::decide(const ReplySequence& omega) const {
    if (omega.size() != params_.q) throw params_error("reply sequence length != q");
    return decide(profile_of(omega));
}

World Distinguisher::decide(const MultiplicityProfile& profile) const {
    return decide_parts(profile.parts);
}

World Distinguisher::decide_parts(const std::vector<std::uint64_t>& parts) const {
    switch (kind_) {
        case Kind::LikelihoodRatio: {
            const std::uint64_t bucket = params_.bucket_capacity();
            long double acc = lr_->log_base;
            for (std::uint64_t d : parts) {
                if (d > bucket) return World::Function;  // ratio is exactly 0
                acc += lr_->ln_fall_bucket[static_cast<std::size_t>(d)];
            }
            if (acc > lr_->margin) return World::Permutation;
            if (acc < -lr_->margin) return World::Function;
            // Within the certified margin: settle exactly.
            Int num = 1;
            const Int bucket_int = Int(bucket);
            for (std::uint64_t d : parts) num *= falling_factorial(bucket_int, d);
            return (num << lr_->shift) >= lr_->perm_den ? World::Permutation : World::Function;
        }
        case Kind::Col2Threshold: {
            Int col2 = 0;
            for (std::uint64_t d : parts)
                if (d >= 2) col2 += Int(d) * Int(d - 1) / 2;
            return col2 >= col2_threshold_int_ ? World::Function : World::Permutation;
        }
        case Kind::GoodSetMembership: {
            MultiplicityProfile p;
            p.parts = parts;
            std::sort(p.parts.begin(), p.parts.end(), std::greater<>());
            return membership_->contains(p) ? World::Permutation : World::Function;
        }
    }
    return World::Function;
}

GoodSetParams hall_good_set(const Params& params, double c) {
    if (!(c > 0)) throw params_error("hall_good_set requires c > 0");
    GoodSetParams s;
    s.t = 2;
    Real dev = Real(c) * Real(params.q) /
               pow2_real(Real(static_cast<long>(params.n) - params.m + 1) / 2);
    s.dev.push_back(rat_from_real(dev));
    s.beta = 0;
    s.validate();
    return s;
}

namespace {

/// Per-thread trial runner with reusable scratch. The histogram is dense
/// when the alphabet is small, else replies are sorted in place.
class TrialRunner {
  public:
    TrialRunner(const Distinguisher& d)
        : d_(d), params_(d.params()), sampler_(params_),
          dense_(params_.reply_bits() <= 20) {
        if (dense_) counts_.assign(static_cast<std::size_t>(params_.alphabet_size()), 0);
        touched_.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(params_.q, 1 << 20)));
        parts_.reserve(touched_.capacity());
    }

    World run(World world, std::uint64_t trial, std::uint64_t seed) {
        SplitMix64 rng = stream_rng(seed, 2 * trial + static_cast<unsigned>(world));
        sampler_.sample(world, rng, replies_);
        parts_.clear();
        if (dense_) {
            touched_.clear();
            for (std::uint64_t sym : replies_) {
                if (counts_[static_cast<std::size_t>(sym)]++ == 0) touched_.push_back(sym);
            }
            for (std::uint64_t sym : touched_) {
                parts_.push_back(counts_[static_cast<std::size_t>(sym)]);
                counts_[static_cast<std::size_t>(sym)] = 0;
            }
        } else {
            std::sort(replies_.begin(), replies_.end());
            std::size_t i = 0;
            while (i < replies_.size()) {
                std::size_t run = i + 1;
                while (run < replies_.size() && replies_[run] == replies_[i]) ++run;
                parts_.push_back(run - i);
                i = run;
            }
        }
        return d_.decide_parts(parts_);
    }

  private:
    const Distinguisher& d_;
    Params params_;
    BatchSampler sampler_;
    bool dense_;
    ReplySequence replies_;
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint64_t> touched_;
    std::vector<std::uint64_t> parts_;
};

}  // namespace

AdvEstimate mc_advantage(const Distinguisher& d, std::uint64_t trials, std::uint64_t seed,
                         unsigned threads) {
    if (trials < 1) throw params_error("trials must be >= 1");
    const unsigned workers = resolve_threads(threads);

    std::vector<std::uint64_t> perm_hits(workers, 0), func_hits(workers, 0);
    parallel_chunks(trials, workers,
                    [&](std::uint64_t begin, std::uint64_t end, unsigned chunk) {
                        TrialRunner runner(d);
                        std::uint64_t ph = 0, fh = 0;
                        for (std::uint64_t t = begin; t < end; ++t) {
                            ph += runner.run(World::Permutation, t, seed) == World::Permutation;
                            fh += runner.run(World::Function, t, seed) == World::Permutation;
                        }
                        perm_hits[chunk] = ph;
                        func_hits[chunk] = fh;
                    });

    AdvEstimate est;
    est.trials_per_world = trials;
    est.seed = seed;
    for (unsigned c = 0; c < workers; ++c) {
        est.perm_hits += perm_hits[c];
        est.func_hits += func_hits[c];
    }
    const double p1 = static_cast<double>(est.perm_hits) / static_cast<double>(trials);
    const double p0 = static_cast<double>(est.func_hits) / static_cast<double>(trials);
    est.point = p1 - p0;
    const double v = (p1 * (1 - p1) + p0 * (1 - p0)) / static_cast<double>(trials);
    est.ci_half_width = 2.5758 * std::sqrt(v);
    return est;
}

EmpiricalQHalf empirical_q_half(const DistinguisherFactory& factory, unsigned n, unsigned m,
                                std::uint64_t max_q, std::uint64_t trials, std::uint64_t seed,
                                unsigned threads) {
    if (max_q > (std::uint64_t(1) << n)) throw params_error("max_q must be <= 2^n");

    std::map<std::uint64_t, bool> cache;
    auto meets = [&](std::uint64_t q) {
        if (auto it = cache.find(q); it != cache.end()) return it->second;
        Params p(n, m, q);
        Distinguisher d = factory(p);
        const std::uint64_t seed_q = mix64(mix64(seed) ^ mix64(q));
        AdvEstimate est = mc_advantage(d, trials, seed_q, threads);
        bool ok = est.point - est.ci_half_width >= 0.5;
        cache.emplace(q, ok);
        return ok;
    };

    EmpiricalQHalf out;
    if (meets(1)) {
        out.reached = true;
        out.q_half = 1;
        return out;
    }
    std::uint64_t lo = 1, hi = 0;
    std::uint64_t probe = 2;
    for (;;) {
        if (probe >= max_q) probe = max_q;
        if (meets(probe)) {
            hi = probe;
            break;
        }
        if (probe == max_q) return out;  // not reached
        lo = probe;
        probe *= 2;
    }
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        (meets(mid) ? hi : lo) = mid;
    }
    out.reached = true;
    out.q_half = hi;
    return out;
}

}  // namespace truncdist
