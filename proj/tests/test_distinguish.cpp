#include <doctest.h>

#include "truncdist/bounds.hpp"
#include "truncdist/distinguish.hpp"
#include "truncdist/exact.hpp"

#include <cmath>

using namespace truncdist;

TEST_CASE("likelihood ratio decisions") {
    Params p(6, 2, 8);
    Distinguisher lr = Distinguisher::likelihood_ratio(p);

    // all-distinct replies: every denominator factor shrinks, ratio > 1
    CHECK(lr.decide(MultiplicityProfile{{1, 1, 1, 1, 1, 1, 1, 1}}) == World::Permutation);

    // a part above 2^m = 4 has permutation probability zero
    CHECK(lr.decide(MultiplicityProfile{{5, 1, 1, 1}}) == World::Function);

    // q = 1: ratio is exactly 1, tie goes to permutation
    Params single(5, 2, 1);
    Distinguisher lr1 = Distinguisher::likelihood_ratio(single);
    CHECK(lr1.decide(MultiplicityProfile{{1}}) == World::Permutation);
}

TEST_CASE("likelihood ratio agrees with exact world probabilities everywhere") {
    for (auto [n, m, q] : std::vector<std::tuple<unsigned, unsigned, std::uint64_t>>{
             {4, 1, 4}, {5, 2, 6}, {6, 3, 9}, {8, 2, 16}}) {
        Params p(n, m, q);
        Distinguisher lr = Distinguisher::likelihood_ratio(p);
        enumerate_profiles(p, false, [&](const ProfileWeight& w) {
            WorldProbabilities wp = world_probabilities(w.profile, p);
            World want = wp.ratio >= 1 ? World::Permutation : World::Function;
            CHECK(lr.decide(w.profile) == want);
        });
    }
}

TEST_CASE("col2 threshold rule") {
    Params p(2, 1, 2);
    // E col_2 = 1/2; theta = E + 0.4 < 1 so any repeat reads as "function"
    Distinguisher d =
        Distinguisher::col2_threshold(p, expected_collision_count(p, 2) + rat_from_double(0.4));
    CHECK(d.decide(ReplySequence{0, 1}) == World::Permutation);
    CHECK(d.decide(ReplySequence{1, 1}) == World::Function);

    // theta <= 0 guesses "function" on everything
    Distinguisher constant = Distinguisher::col2_threshold(p, Rat(0));
    CHECK(constant.decide(ReplySequence{0, 1}) == World::Function);
}

TEST_CASE("hall-style good set and membership rule") {
    Params p(4, 1, 4);
    GoodSetParams s = hall_good_set(p, 1.0);
    CHECK(s.t == 2);
    CHECK(s.dev_for(2) == 1);  // c q / 2^((n-m+1)/2) = 4/4
    CHECK(s.beta == 0);
    CHECK_THROWS_AS(hall_good_set(p, 0.0), params_error);

    Distinguisher d = Distinguisher::good_set_membership(p, s);
    // col_2 = 0 is within 1 of E = 3/4 and col_3 = 0: inside S
    CHECK(d.decide(ReplySequence{0, 1, 2, 3}) == World::Permutation);
    // beta = 0 rejects any triple collision
    CHECK(d.decide(ReplySequence{5, 5, 5, 1}) == World::Function);
    // col_2 = 2 deviates by more than 1
    CHECK(d.decide(ReplySequence{3, 3, 6, 6}) == World::Function);
}

TEST_CASE("decisions factor through the profile") {
    Params p(5, 2, 10);
    std::vector<Distinguisher> rules;
    rules.push_back(Distinguisher::likelihood_ratio(p));
    rules.push_back(Distinguisher::col2_threshold(p, expected_collision_count(p, 2) + 1));
    rules.push_back(Distinguisher::good_set_membership(p, hall_good_set(p, 1.0)));
    SplitMix64 rng(5);
    for (int round = 0; round < 30; ++round) {
        ReplySequence omega = sample_reply_sequence(p, World::Function, 100 + round);
        ReplySequence shuffled = omega;
        for (std::size_t k = shuffled.size(); k > 1; --k)
            std::swap(shuffled[k - 1], shuffled[rng.next() % k]);
        for (const auto& d : rules) CHECK(d.decide(omega) == d.decide(shuffled));
    }
}

TEST_CASE("mc advantage matches the exact value within its interval") {
    Params p(2, 1, 2);
    AdvEstimate est = mc_advantage(Distinguisher::likelihood_ratio(p), 100000, 17);
    const double exact = 1.0 / 6.0;
    CHECK(std::fabs(est.point - exact) <= est.ci_half_width);
    CHECK(est.trials_per_world == 100000);
    CHECK(est.seed == 17);
    CHECK(est.ci_half_width > 0);
}

TEST_CASE("a constant guess has zero advantage") {
    Params p(4, 1, 6);
    AdvEstimate est = mc_advantage(Distinguisher::col2_threshold(p, Rat(0)), 5000, 3);
    CHECK(est.perm_hits == 0);
    CHECK(est.func_hits == 0);
    CHECK(est.point == 0.0);
}

TEST_CASE("estimates are identical for any worker count") {
    Params p(8, 2, 32);
    Distinguisher lr = Distinguisher::likelihood_ratio(p);
    AdvEstimate a = mc_advantage(lr, 30000, 5, 1);
    AdvEstimate b = mc_advantage(lr, 30000, 5, 4);
    AdvEstimate c = mc_advantage(lr, 30000, 5, 13);
    CHECK(a.perm_hits == b.perm_hits);
    CHECK(a.func_hits == b.func_hits);
    CHECK(b.perm_hits == c.perm_hits);
    CHECK(b.func_hits == c.func_hits);
    CHECK(a.point == c.point);
}

TEST_CASE("no monte carlo rule beats the exact optimum") {
    Params p(4, 2, 8);
    const double exact = static_cast<double>(real_from_rat(exact_advantage(p).advantage));
    std::vector<Distinguisher> rules;
    rules.push_back(Distinguisher::likelihood_ratio(p));
    rules.push_back(Distinguisher::col2_threshold(
        p, expected_collision_count(p, 2) + rat_from_double(1.0)));
    rules.push_back(Distinguisher::good_set_membership(p, hall_good_set(p, 2.0)));
    for (const auto& d : rules) {
        AdvEstimate est = mc_advantage(d, 40000, 23);
        CHECK(est.point <= exact + est.ci_half_width);
    }
}

TEST_CASE("empirical q_half brackets the closed-form value at m=0") {
    // exact scan of the m=0 closed form at n=8
    std::uint64_t exact_q = 0;
    for (std::uint64_t q = 2; q <= 256; ++q) {
        if (birthday_exact_m0(8, q) >= Rat(1, 2)) {
            exact_q = q;
            break;
        }
    }
    REQUIRE(exact_q > 0);
    EmpiricalQHalf eq = empirical_q_half(
        [](const Params& p) { return Distinguisher::likelihood_ratio(p); }, 8, 0, 256, 20000, 42);
    REQUIRE(eq.reached);
    const double rel = static_cast<double>(eq.q_half) / static_cast<double>(exact_q);
    CHECK(rel >= 0.5);
    CHECK(rel <= 2.0);
}

TEST_CASE("under-powered search reports not-reached") {
    EmpiricalQHalf eq = empirical_q_half(
        [](const Params& p) { return Distinguisher::likelihood_ratio(p); }, 8, 2, 4, 10, 9);
    CHECK_FALSE(eq.reached);
}
