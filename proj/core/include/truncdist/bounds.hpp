#ifndef TRUNCDIST_BOUNDS_HPP
#define TRUNCDIST_BOUNDS_HPP

#include "truncdist/good_set.hpp"
#include "truncdist/numeric.hpp"
#include "truncdist/params.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace truncdist {

/// A closed-form advantage bound evaluated at one instance. Regime
/// preconditions are decided in exact integer arithmetic; only the value
/// itself is floating point.
struct BoundValue {
    std::optional<Real> value;
    bool applicable = false;
    std::string reason;  // set when not applicable

    static BoundValue ok(Real v) { return BoundValue{std::move(v), true, {}}; }
    static BoundValue na(std::string why) { return BoundValue{std::nullopt, false, std::move(why)}; }
};

/// The scale-free query load x = q / 2^((n+m)/2).
Real query_load(const Params& params);

struct BirthdayBounds {
    BoundValue lower;  // 1 - e^(-q(q-1)/2^(n+1)); advantage lower bound only at m = 0
    BoundValue upper;  // q(q-1)/2^(n+1); valid under any truncation
    std::optional<Rat> exact_m0;  // 1 - prod (1 - i/2^n), populated when m = 0
};

BirthdayBounds birthday_bounds(const Params& params);

/// Exact m = 0 advantage 1 - prod_{i<q} (1 - i/2^n) of the collision test.
Rat birthday_exact_m0(unsigned n, std::uint64_t q);

/// 5 x^(2/3) + (1/2) x^3 2^(-(n-7m)/2).
BoundValue hall_bound(const Params& params);

/// (1/2) sqrt((2^(n-m)-1) q (q-1) / ((2^n-1)(2^n-(q-1)))); valid for all m < n.
BoundValue stam_bound(const Params& params);

/// The weaker closed form (1/2) (1-(q-1)/2^n)^(-1/2) x; always >= stam_bound.
BoundValue stam_bound_simplified(const Params& params);

/// 2*2^(1/3) x^(2/3) + (2 sqrt 2/sqrt 3) x^(3/2) + x^2, valid for m <= n/3.
BoundValue small_m_bound(const Params& params);

/// 3 x^(2/3) + 2x + 5x^2 + (1/2)(2x)^(n/(n-m)), valid for n/3 < m <= n-4-log2(n).
BoundValue large_m_bound(const Params& params);

/// Good-set thresholds used to derive the small-m bound:
/// alpha = 2^m 4^(-1/3) x^(2/3), beta = 2^(2m) x^(3/2) / (2 sqrt 6 2^((n-3m)/4)).
/// Requires 6 <= m <= n/3 and q < 2^((n+m)/2)/4; the returned values are
/// re-checked against the combination lemma's premises (a failure there
/// would be an internal bug, reported as logic_error).
struct SmallMGoodSetChoice {
    Real alpha;
    Real beta;
};

SmallMGoodSetChoice small_m_good_set_choice(const Params& params);

/// Right-hand side of the combination step for the small-m analysis at the
/// given thresholds: x^2 + (2a/2^m + x^2 (2^m/a)^2 / 2)
///                       + (4b/2^(2m) + x^3 2^(2m)/(6 2^((n-3m)/2) b)).
Real small_m_combined_rhs(const Params& params, const SmallMGoodSetChoice& choice);

/// Good-set thresholds for the large-m analysis with t = ceil((n+m)/(n-m))
/// collision orders. Requires n/3 < m <= n-4-log2(n) and q < 2^((n+m)/2)/8.
/// `note` records the exponent convention in force for the premise checks.
struct LargeMGoodSetChoice {
    unsigned t = 0;
    std::vector<Real> alphas;  // alphas[j-1] bounds the col_(j+1) deviation, j = 1..t-1
    Real beta;
    std::string note;
};

LargeMGoodSetChoice large_m_good_set_choice(const Params& params);

/// Exact-rational good-set parameters from the float choices (dyadic
/// conversion; membership tests stay exact).
GoodSetParams to_good_set_params(const SmallMGoodSetChoice& choice);
GoodSetParams to_good_set_params(const LargeMGoodSetChoice& choice);

enum class BoundId { BirthdayUpper, Hall, Stam, SmallM, LargeM };

const char* bound_name(BoundId id);
std::optional<BoundId> bound_from_name(const std::string& name);

/// Smallest q at which the bound stops certifying advantage < 1/2.
struct QHalfCertificate {
    bool applicable = false;
    std::string reason;           // when not applicable
    bool reached = false;         // bound hits 1/2 within q <= 2^n
    std::uint64_t first_q_at_half = 0;   // min q with bound(q) >= 1/2, when reached
    std::uint64_t last_q_certified = 0;  // largest q with bound(q) < 1/2 (2^n when not reached)
};

/// Exponential-then-binary search over q in [1, 2^n]. All implemented
/// bounds are non-decreasing in q on their applicability range.
QHalfCertificate q_half_from_bound(BoundId id, unsigned n, unsigned m);

}  // namespace truncdist

#endif
