#include <doctest.h>

#include "truncdist/bounds.hpp"
#include "truncdist/exact.hpp"

#include <cmath>

using namespace truncdist;

namespace {

double val(const BoundValue& b) {
    REQUIRE(b.applicable);
    return static_cast<double>(*b.value);
}

// double-precision re-evaluation, the independent oracle for formula values
double load(unsigned n, unsigned m, double q) { return q / std::pow(2.0, (n + m) / 2.0); }

}  // namespace

TEST_CASE("birthday bounds") {
    Params p(2, 0, 2);
    BirthdayBounds b = birthday_bounds(p);
    CHECK(val(b.upper) == 0.25);
    REQUIRE(b.exact_m0.has_value());
    CHECK(*b.exact_m0 == Rat(1, 4));
    CHECK(*b.exact_m0 == exact_advantage(p).advantage);
    CHECK(val(b.lower) == doctest::Approx(1 - std::exp(-0.25)).epsilon(1e-12));

    BirthdayBounds single = birthday_bounds(Params(6, 0, 1));
    CHECK(val(single.upper) == 0.0);
    CHECK(val(single.lower) == 0.0);

    BirthdayBounds wide = birthday_bounds(Params(10, 0, 32));
    CHECK(val(wide.upper) == doctest::Approx(0.484375).epsilon(1e-15));

    BirthdayBounds truncated = birthday_bounds(Params(10, 3, 32));
    CHECK(truncated.upper.applicable);  // upper bound survives truncation
    CHECK_FALSE(truncated.lower.applicable);
    CHECK_FALSE(truncated.exact_m0.has_value());
    CHECK_FALSE(truncated.lower.reason.empty());
}

TEST_CASE("hall bound values") {
    // x = 1 and n = 7m makes both terms exact: 5 + 1/2
    CHECK(val(hall_bound(Params(14, 2, 256))) == doctest::Approx(5.5).epsilon(1e-12));

    // tiny q: dominated by 5 x^(2/3)
    Params small(20, 2, 1);
    double x = load(20, 2, 1);
    CHECK(val(hall_bound(small)) ==
          doctest::Approx(5 * std::pow(x, 2.0 / 3) + 0.5 * std::pow(x, 3) / std::pow(2.0, 7.0))
              .epsilon(1e-9));

    // heavy truncation (m > n/7): the cubic term eventually dwarfs stam
    bool exceeded = false;
    for (std::uint64_t q = 2; q <= 256; q *= 2)
        exceeded = exceeded || *hall_bound(Params(8, 4, q)).value >
                                   *stam_bound(Params(8, 4, q)).value;
    CHECK(exceeded);
}

TEST_CASE("stam bound values and domination") {
    CHECK(val(stam_bound(Params(2, 1, 2))) == doctest::Approx(0.2357022604).epsilon(1e-9));
    CHECK(Rat(1, 6) <= rat_from_real(*stam_bound(Params(2, 1, 2)).value));

    CHECK(val(stam_bound(Params(4, 2, 4))) == doctest::Approx(0.2148344622).epsilon(1e-9));
    CHECK(exact_advantage(Params(4, 2, 4)).advantage <=
          rat_from_real(*stam_bound(Params(4, 2, 4)).value));

    CHECK(val(stam_bound(Params(8, 3, 1))) == 0.0);  // q = 1

    // the simplified closed form is never below the sharp one
    for (unsigned n : {4u, 8u, 16u})
        for (unsigned m = 0; m < n; m += 2)
            for (std::uint64_t q : {2ULL, 5ULL, 13ULL})
                CHECK(*stam_bound_simplified(Params(n, m, q)).value + Real("1e-40") >=
                      *stam_bound(Params(n, m, q)).value);
}

TEST_CASE("small-m bound") {
    // x = 1/4: first term is exactly 1
    CHECK(val(small_m_bound(Params(12, 0, 16))) == doctest::Approx(1.26662414).epsilon(1e-8));
    CHECK(val(small_m_bound(Params(12, 4, 16))) == doctest::Approx(0.426272031).epsilon(1e-8));
    CHECK(val(small_m_bound(Params(40, 2, 1))) < 1e-3);  // vanishes with x
    CHECK_FALSE(small_m_bound(Params(2, 1, 2)).applicable);  // m > n/3
    CHECK(small_m_bound(Params(12, 4, 16)).applicable);      // boundary m = n/3
}

TEST_CASE("large-m bound") {
    // (16,8): exponent n/(n-m) = 2; all terms dyadic
    CHECK(val(large_m_bound(Params(16, 8, 512))) == doctest::Approx(1.109375).epsilon(1e-12));
    CHECK(val(large_m_bound(Params(16, 8, 64))) ==
          doctest::Approx(903.0 / 4096.0).epsilon(1e-12));
    CHECK_FALSE(large_m_bound(Params(12, 4, 8)).applicable);  // m <= n/3
    CHECK_FALSE(large_m_bound(Params(16, 9, 8)).applicable);  // 2^(n-4-m) < n
    CHECK_FALSE(large_m_bound(Params(6, 4, 8)).applicable);   // m > n - 4
}

TEST_CASE("bounds non-decreasing in q") {
    for (auto [n, m] : std::vector<std::pair<unsigned, unsigned>>{{12, 4}, {16, 8}}) {
        Real prev = -1;
        for (std::uint64_t q = 1; q <= 1 << 10; q *= 2) {
            BoundValue b = 3 * m <= n ? small_m_bound(Params(n, m, q))
                                      : large_m_bound(Params(n, m, q));
            CHECK(*b.value >= prev);
            prev = *b.value;
        }
    }
}

TEST_CASE("small-m good-set choice") {
    // alpha = 2^m 4^(-1/3) x^(2/3) with x = 2^-4: exactly 2^(8/3)
    SmallMGoodSetChoice choice = small_m_good_set_choice(Params(30, 6, 1 << 14));
    CHECK(static_cast<double>(choice.alpha) ==
          doctest::Approx(std::pow(2.0, 8.0 / 3)).epsilon(1e-12));
    CHECK(static_cast<double>(choice.alpha) == doctest::Approx(6.3496042079).epsilon(1e-9));
    CHECK(choice.beta > 0);

    CHECK_THROWS_AS(small_m_good_set_choice(Params(30, 5, 1 << 10)), params_error);  // m < 6
    CHECK_THROWS_AS(small_m_good_set_choice(Params(30, 11, 1 << 10)), params_error); // m > n/3
    // q boundary is exact: q = 2^((n+m)/2)/4 is out, one less is in
    CHECK_THROWS_AS(small_m_good_set_choice(Params(30, 6, 1 << 16)), params_error);
    CHECK_NOTHROW(small_m_good_set_choice(Params(30, 6, (1 << 16) - 1)));

    GoodSetParams s = to_good_set_params(choice);
    CHECK(s.t == 2);
    CHECK(s.dev_for(2) == rat_from_real(choice.alpha));
}

TEST_CASE("combined small-m chain meets the closed form") {
    // equality case m = n/3: the optimized rhs equals the closed form
    for (std::uint64_t q : {8ULL, 64ULL, 512ULL}) {
        Params p(18, 6, q);
        Real rhs = small_m_combined_rhs(p, small_m_good_set_choice(p));
        Real bound = *small_m_bound(p).value;
        CHECK(abs(rhs - bound) <= Real("1e-12") * bound);
    }
    // strict regime m < n/3: rhs is below the closed form, above the exact value
    Params p(24, 6, 40);
    Real rhs = small_m_combined_rhs(p, small_m_good_set_choice(p));
    CHECK(rhs <= *small_m_bound(p).value + Real("1e-12"));
    CHECK(real_from_rat(exact_advantage(p).advantage) <= rhs + Real("1e-12"));
}

TEST_CASE("large-m good-set choice") {
    LargeMGoodSetChoice c168 = large_m_good_set_choice(Params(16, 8, 64));
    CHECK(c168.t == 3);
    CHECK(c168.alphas.size() == 2);
    CHECK_FALSE(c168.note.empty());
    CHECK(large_m_good_set_choice(Params(15, 6, 16)).t == 3);

    CHECK_THROWS_AS(large_m_good_set_choice(Params(12, 4, 8)), params_error);  // m <= n/3
    CHECK_THROWS_AS(large_m_good_set_choice(Params(16, 8, 512)), params_error);  // q boundary
    CHECK_NOTHROW(large_m_good_set_choice(Params(16, 8, 511)));

    GoodSetParams s = to_good_set_params(c168);
    CHECK(s.t == 3);
    CHECK(s.dev.size() == 2);
}

TEST_CASE("q_half certificates") {
    QHalfCertificate bd = q_half_from_bound(BoundId::BirthdayUpper, 16, 0);
    CHECK(bd.applicable);
    CHECK(bd.reached);
    CHECK(bd.first_q_at_half == 257);  // min q with q(q-1) >= 2^16
    CHECK(bd.last_q_certified == 256);

    for (auto [n, m] : std::vector<std::pair<unsigned, unsigned>>{{16, 0}, {16, 8}, {20, 10}}) {
        QHalfCertificate st = q_half_from_bound(BoundId::Stam, n, m);
        REQUIRE(st.reached);
        double ratio = static_cast<double>(st.first_q_at_half) / std::pow(2.0, (n + m) / 2.0);
        CHECK(ratio >= 0.25);
        CHECK(ratio <= 4.0);
    }

    // heavy truncation: hall certifies strictly less than even the birthday bound
    for (unsigned m : {9u, 12u, 16u}) {
        QHalfCertificate hall = q_half_from_bound(BoundId::Hall, 32, m);
        QHalfCertificate bday = q_half_from_bound(BoundId::BirthdayUpper, 32, m);
        REQUIRE(hall.reached);
        REQUIRE(bday.reached);
        CHECK(hall.first_q_at_half < bday.first_q_at_half);
    }

    QHalfCertificate na = q_half_from_bound(BoundId::LargeM, 12, 2);
    CHECK_FALSE(na.applicable);
    CHECK_FALSE(na.reason.empty());

    // never reaches 1/2 within q <= 2^n: certified everywhere
    QHalfCertificate far = q_half_from_bound(BoundId::Stam, 8, 0);
    if (!far.reached) CHECK(far.last_q_certified == 256);
}

TEST_CASE("bound names round-trip") {
    for (BoundId id : {BoundId::BirthdayUpper, BoundId::Hall, BoundId::Stam, BoundId::SmallM,
                       BoundId::LargeM})
        CHECK(bound_from_name(bound_name(id)) == id);
    CHECK_FALSE(bound_from_name("nope").has_value());
}
