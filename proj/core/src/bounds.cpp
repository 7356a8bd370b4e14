#include "truncdist/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace truncdist {

namespace {

Real pow23(const Real& x) { return pow(x, Real(2) / 3); }
Real cbrt_real(const Real& x) { return pow(x, Real(1) / 3); }

// 2^(a/2) for signed integer a.
Real pow2_half(long a) { return pow2_real(Real(a) / 2); }

}  // namespace

Real query_load(const Params& params) {
    return Real(params.q) * pow2_half(-static_cast<long>(params.n + params.m));
}

Rat birthday_exact_m0(unsigned n, std::uint64_t q) {
    Params check(n, 0, q);  // validates ranges
    const Int domain = Int(check.domain_size());
    return 1 - Rat(falling_factorial(domain, q), pow(Int(2), n * static_cast<unsigned>(q)));
}

BirthdayBounds birthday_bounds(const Params& params) {
    BirthdayBounds out;
    const Rat load2(Int(params.q) * Int(params.q - 1), pow2_int(params.n + 1));  // q(q-1)/2^(n+1)
    out.upper = BoundValue::ok(real_from_rat(load2));
    if (params.m == 0) {
        out.lower = BoundValue::ok(1 - exp(-real_from_rat(load2)));
        out.exact_m0 = birthday_exact_m0(params.n, params.q);
    } else {
        out.lower = BoundValue::na("collision-test lower bound stated only for m = 0");
    }
    return out;
}

BoundValue hall_bound(const Params& params) {
    const Real x = query_load(params);
    const long e = static_cast<long>(params.n) - 7L * static_cast<long>(params.m);
    return BoundValue::ok(5 * pow23(x) + pow(x, 3) / 2 * pow2_half(-e));
}

BoundValue stam_bound(const Params& params) {
    const Int domain = Int(params.domain_size());
    const Rat inner(Int(params.alphabet_size() - 1) * Int(params.q) * Int(params.q - 1),
                    (domain - 1) * (domain - Int(params.q - 1)));
    return BoundValue::ok(sqrt(real_from_rat(inner)) / 2);
}

BoundValue stam_bound_simplified(const Params& params) {
    const Rat kept(Int(params.domain_size()) - Int(params.q - 1), Int(params.domain_size()));
    return BoundValue::ok(query_load(params) / (2 * sqrt(real_from_rat(kept))));
}

BoundValue small_m_bound(const Params& params) {
    if (3ULL * params.m > params.n)
        return BoundValue::na("requires m <= n/3");
    const Real x = query_load(params);
    return BoundValue::ok(2 * cbrt_real(Real(2)) * pow23(x) +
                          2 * sqrt(Real(2)) / sqrt(Real(3)) * pow(x, Real(3) / 2) + x * x);
}

namespace {

// m <= n - 4 - log2(n), checked exactly as 2^(n-4-m) >= n.
bool large_m_upper_regime(const Params& params) {
    if (params.m + 4 > params.n) return false;
    return (Int(1) << (params.n - 4 - params.m)) >= Int(params.n);
}

}  // namespace

BoundValue large_m_bound(const Params& params) {
    if (3ULL * params.m <= params.n)
        return BoundValue::na("requires m > n/3");
    if (!large_m_upper_regime(params))
        return BoundValue::na("requires m <= n - 4 - log2(n)");
    const Real x = query_load(params);
    const Real tail_exp = Real(params.n) / Real(params.n - params.m);
    return BoundValue::ok(3 * pow23(x) + 2 * x + 5 * x * x + pow(2 * x, tail_exp) / 2);
}

SmallMGoodSetChoice small_m_good_set_choice(const Params& params) {
    if (params.m < 6 || 3ULL * params.m > params.n)
        throw params_error("good-set choice requires 6 <= m <= n/3");
    if (Int(16) * Int(params.q) * Int(params.q) >= pow2_int(params.n + params.m))
        throw params_error("good-set choice requires q < 2^((n+m)/2)/4");

    const Real x = query_load(params);
    const Real bucket = pow2_real(Real(params.m));
    SmallMGoodSetChoice choice;
    choice.alpha = bucket / cbrt_real(Real(4)) * pow23(x);
    choice.beta = bucket * bucket * pow(x, Real(3) / 2) /
                  (2 * sqrt(Real(6)) * pow2_real(Real(static_cast<long>(params.n) - 3L * params.m) / 4));

    // Premises of the combination lemma; in regime these hold by
    // construction, so a failure is an implementation bug.
    const Real half(Real(1) / 2);
    bool ok = params.q <= (std::uint64_t(1) << (params.n - 1));
    ok = ok && choice.alpha / bucket +
                       Real(2) / 3 * pow2_half(-(static_cast<long>(params.n) - 3L * params.m)) *
                           pow(x, 3) <=
                   half;
    ok = ok && x * x + 2 * choice.alpha / (bucket * bucket) <= half * (half - 1 / bucket);
    ok = ok && choice.beta >= 2 * real_from_rat(Rat(binomial(params.q, 3),
                                                    pow2_int(2 * params.reply_bits())));
    if (!ok)
        throw std::logic_error("small-m good-set premises violated in regime (internal bug)");
    return choice;
}

Real small_m_combined_rhs(const Params& params, const SmallMGoodSetChoice& choice) {
    const Real x = query_load(params);
    const Real bucket = pow2_real(Real(params.m));
    const Real a = choice.alpha, b = choice.beta;
    return x * x + (2 * a / bucket + x * x * pow(bucket / a, 2) / 2) +
           (4 * b / (bucket * bucket) +
            pow(x, 3) * bucket * bucket /
                (6 * pow2_half(static_cast<long>(params.n) - 3L * params.m) * b));
}

LargeMGoodSetChoice large_m_good_set_choice(const Params& params) {
    if (3ULL * params.m <= params.n)
        throw params_error("good-set choice requires m > n/3");
    if (!large_m_upper_regime(params))
        throw params_error("good-set choice requires m <= n - 4 - log2(n)");
    if (Int(64) * Int(params.q) * Int(params.q) >= pow2_int(params.n + params.m))
        throw params_error("good-set choice requires q < 2^((n+m)/2)/8");

    const unsigned span = params.n - params.m;
    const unsigned t = (params.n + params.m + span - 1) / span;  // ceil((n+m)/(n-m))
    if (t < 2 || Int(2) * Int(t - 1) * Int(t - 1) > pow2_int(params.m))
        throw std::logic_error("large-m t out of range (internal bug)");

    const Real x = query_load(params);
    const Real bucket = pow2_real(Real(params.m));
    const Real y = pow2_half(static_cast<long>(params.n) - 3L * params.m);  // 2^((n-3m)/2)

    LargeMGoodSetChoice choice;
    choice.t = t;
    choice.note = "premise exponents use the convention t - (n+m)/(n-m)";

    choice.alphas.push_back(bucket / cbrt_real(4 * (1 + 4 / bucket)) * pow23(x));
    for (unsigned j = 2; j <= t - 1; ++j) {
        Real fac = static_cast<Real>(factorial(j - 1));
        Real inner = pow2_real(-Real((j - 1) * span)) * pow(x, j + 1) * pow(y + x, j - 1);
        choice.alphas.push_back(pow2_real(Real(j) * params.m) /
                                cbrt_real(2 * (1 + pow2_real(Real(j))) * fac * fac) *
                                cbrt_real(inner));
    }
    choice.beta = pow2_real(Real(t) * params.m) / static_cast<Real>(factorial(t - 1)) *
                  sqrt(pow(Real(params.q), t + 1) /
                       (Real(t) * (t + 1) * pow2_real(Real(t) * (params.n + 1))));

    // Premises of the large-m combination lemma, all evaluated numerically.
    const Real half(Real(1) / 2);
    const Real conv_exp = Real(span) / 2 * (Real(t) - Real(params.n + params.m) / span);
    bool ok = pow2_real(-conv_exp) * pow(2 * x, t + 1) <= Real(t) * (t + 1) / 4;
    ok = ok && x * x + pow23(x) / (cbrt_real(1 + 4 / bucket) * bucket) <= half * (half - 1 / bucket);
    ok = ok && 4 * Real(static_cast<int>(t) - 2) / pow2_real(Real(span)) * (y + x) * x <= Real(1) / 8;
    const Real crowd = 2 * (Real(params.q) + (t - 1)) * pow2_half(-static_cast<long>(params.n + params.m));
    ok = ok && 4 * pow(Real(params.q) / pow2_real(Real(params.n)), 2) +
                       pow(crowd, t + 1) / (2 * Real(t) * (t + 1) * pow2_real(conv_exp)) +
                       half / cbrt_real(1 + 4 / bucket) * pow23(x) +
                       cbrt_real(Real(2) / (5 * pow2_real(Real(span))) * (y + x)) * x <=
                   half;
    if (!ok)
        throw std::logic_error("large-m good-set premises violated in regime (internal bug)");
    return choice;
}

GoodSetParams to_good_set_params(const SmallMGoodSetChoice& choice) {
    GoodSetParams s;
    s.t = 2;
    s.dev.push_back(rat_from_real(choice.alpha));
    s.beta = rat_from_real(choice.beta);
    s.validate();
    return s;
}

GoodSetParams to_good_set_params(const LargeMGoodSetChoice& choice) {
    GoodSetParams s;
    s.t = choice.t;
    for (const Real& a : choice.alphas) s.dev.push_back(rat_from_real(a));
    s.beta = rat_from_real(choice.beta);
    s.validate();
    return s;
}

const char* bound_name(BoundId id) {
    switch (id) {
        case BoundId::BirthdayUpper: return "birthday_upper";
        case BoundId::Hall: return "hall";
        case BoundId::Stam: return "stam";
        case BoundId::SmallM: return "small_m";
        case BoundId::LargeM: return "large_m";
    }
    return "?";
}

std::optional<BoundId> bound_from_name(const std::string& name) {
    if (name == "birthday_upper" || name == "birthday") return BoundId::BirthdayUpper;
    if (name == "hall") return BoundId::Hall;
    if (name == "stam") return BoundId::Stam;
    if (name == "small_m") return BoundId::SmallM;
    if (name == "large_m") return BoundId::LargeM;
    return std::nullopt;
}

namespace {

BoundValue eval_bound(BoundId id, const Params& params) {
    switch (id) {
        case BoundId::BirthdayUpper: return birthday_bounds(params).upper;
        case BoundId::Hall: return hall_bound(params);
        case BoundId::Stam: return stam_bound(params);
        case BoundId::SmallM: return small_m_bound(params);
        case BoundId::LargeM: return large_m_bound(params);
    }
    return BoundValue::na("unknown bound");
}

}  // namespace

QHalfCertificate q_half_from_bound(BoundId id, unsigned n, unsigned m) {
    QHalfCertificate cert;
    const std::uint64_t cap = std::uint64_t(1) << n;

    BoundValue probe = eval_bound(id, Params(n, m, 1));
    if (!probe.applicable) {
        cert.reason = probe.reason;
        return cert;
    }
    cert.applicable = true;

    auto at_half = [&](std::uint64_t q) {
        BoundValue b = eval_bound(id, Params(n, m, q));
        return b.applicable && *b.value >= Real(1) / 2;
    };

    if (!at_half(cap)) {
        cert.reached = false;
        cert.last_q_certified = cap;
        return cert;
    }
    cert.reached = true;
    if (at_half(1)) {
        cert.first_q_at_half = 1;
        cert.last_q_certified = 0;
        return cert;
    }
    std::uint64_t lo = 1, hi = cap;  // at_half(lo) false, at_half(hi) true
    std::uint64_t step = 2;
    while (step < cap && !at_half(step)) {
        lo = step;
        step *= 2;
    }
    hi = step < cap ? step : cap;
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        (at_half(mid) ? hi : lo) = mid;
    }
    cert.first_q_at_half = hi;
    cert.last_q_certified = hi - 1;
    return cert;
}

}  // namespace truncdist
