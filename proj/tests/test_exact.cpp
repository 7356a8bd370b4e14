#include <doctest.h>

#include "truncdist/bounds.hpp"
#include "truncdist/exact.hpp"

using namespace truncdist;

TEST_CASE("world probabilities at (n=2, m=1, q=2)") {
    Params p(2, 1, 2);

    // oracle: all 12 ordered pairs of distinct outputs of a 4-element
    // permutation, truncated by one bit
    int hits_distinct = 0, hits_equal = 0, total = 0;
    for (int y1 = 0; y1 < 4; ++y1)
        for (int y2 = 0; y2 < 4; ++y2) {
            if (y1 == y2) continue;
            ++total;
            if ((y1 >> 1) != (y2 >> 1)) ++hits_distinct;
            else ++hits_equal;
        }
    CHECK(total == 12);
    // 8 pairs land in distinct buckets -> P over a given distinct-bucket
    // sequence, e.g. (0,1): 4/12; equal buckets, e.g. (0,0): 2/12.
    CHECK(Rat(hits_distinct / 2, 12) == Rat(1, 3));
    CHECK(Rat(hits_equal / 2, 12) == Rat(1, 6));

    WorldProbabilities distinct = world_probabilities(MultiplicityProfile{{1, 1}}, p);
    CHECK(distinct.p_perm == Rat(1, 3));
    CHECK(distinct.p_func == Rat(1, 4));
    CHECK(distinct.ratio == Rat(4, 3));

    WorldProbabilities collide = world_probabilities(MultiplicityProfile{{2}}, p);
    CHECK(collide.p_perm == Rat(1, 6));
    CHECK(collide.ratio == Rat(2, 3));
}

TEST_CASE("a part above the bucket capacity has zero permutation mass") {
    Params p(4, 1, 3);
    WorldProbabilities wp = world_probabilities(MultiplicityProfile{{3}}, p);
    CHECK(wp.p_perm == 0);
    CHECK(wp.ratio == 0);
    CHECK(wp.p_func == Rat(1, 512));
    CHECK_THROWS_AS(world_probabilities(MultiplicityProfile{{2, 2}}, p), params_error);
}

TEST_CASE("exact advantage on pinned instances") {
    CHECK(exact_advantage(Params(2, 1, 2)).advantage == Rat(1, 6));
    CHECK(exact_advantage(Params(2, 0, 2)).advantage == Rat(1, 4));
    CHECK(exact_advantage(Params(2, 0, 2)).advantage == birthday_exact_m0(2, 2));
    CHECK(exact_advantage(Params(5, 2, 1)).advantage == 0);
    CHECK(exact_advantage(Params(62, 30, 1)).advantage == 0);
}

TEST_CASE("exact advantage equals the brute-force sequence walk") {
    for (auto [n, m, q] : std::vector<std::tuple<unsigned, unsigned, std::uint64_t>>{
             {2, 1, 2}, {2, 1, 4}, {3, 1, 3}, {3, 2, 6}, {4, 2, 5}, {4, 3, 4}}) {
        Params p(n, m, q);
        CHECK(exact_advantage(p).advantage == brute_force_advantage(p));
    }
    CHECK(brute_force_advantage(Params(2, 1, 2)) == Rat(1, 6));
}

TEST_CASE("brute force refuses oversized cubes") {
    CHECK_THROWS_AS(brute_force_advantage(Params(24, 0, 4)), size_error);
}

TEST_CASE("ml threshold mass is the permutation mass of the ratio>=1 region") {
    Params p(4, 1, 4);
    ExactAdvantageReport report = exact_advantage(p);
    Rat mass = 0;
    enumerate_profiles(p, false, [&](const ProfileWeight& w) {
        WorldProbabilities wp = world_probabilities(w.profile, p);
        if (wp.ratio >= 1) mass += w.count * wp.p_perm;
    });
    CHECK(report.ml_threshold_mass == mass);
    CHECK(report.ml_threshold_mass >= 0);
    CHECK(report.ml_threshold_mass <= 1);
    CHECK(report.profiles_enumerated == 5);  // partitions of 4
}

TEST_CASE("advantage is the gain of the ratio>=1 region") {
    for (auto [n, m, q] : std::vector<std::tuple<unsigned, unsigned, std::uint64_t>>{
             {3, 1, 4}, {4, 2, 6}, {5, 1, 5}}) {
        Params p(n, m, q);
        Rat gain = 0;
        enumerate_profiles(p, false, [&](const ProfileWeight& w) {
            WorldProbabilities wp = world_probabilities(w.profile, p);
            if (wp.p_perm >= wp.p_func) gain += w.count * (wp.p_perm - wp.p_func);
        });
        CHECK(gain == exact_advantage(p).advantage);
    }
}

TEST_CASE("good-set quantities: edge cases") {
    Params p(4, 1, 4);

    GoodSetParams loose;
    loose.t = 2;
    loose.dev.push_back(Rat(binomial(p.q, 2)) + 1);
    loose.beta = Rat(binomial(p.q, 3)) + 1;
    GoodSetQuantities all_in = good_set_quantities(p, loose);
    CHECK(all_in.func_mass_outside == 0);
    CHECK(all_in.perm_mass_outside == 0);
    CHECK(exact_advantage(p).advantage <= all_in.max_ratio_dev);

    GoodSetParams tight;
    tight.t = 2;
    tight.dev.push_back(Rat(1, 1000));
    tight.beta = 0;
    GoodSetQuantities none_in = good_set_quantities(p, tight);
    CHECK(none_in.func_mass_outside == 1);
    CHECK(none_in.perm_mass_outside == 1);
    CHECK(none_in.max_ratio_dev == 0);
}

TEST_CASE("good-set params validate") {
    GoodSetParams s;
    s.t = 1;
    CHECK_THROWS_AS(s.validate(), params_error);
    s.t = 2;
    CHECK_THROWS_AS(s.validate(), params_error);  // missing dev entry
    s.dev.push_back(Rat(0));
    CHECK_THROWS_AS(s.validate(), params_error);  // dev must be positive
    s.dev[0] = 1;
    s.beta = -1;
    CHECK_THROWS_AS(s.validate(), params_error);
    s.beta = 0;
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("advantage decomposition inequality for assorted sets") {
    for (auto [n, m, q] : std::vector<std::tuple<unsigned, unsigned, std::uint64_t>>{
             {4, 1, 4}, {5, 2, 8}, {6, 3, 10}}) {
        Params p(n, m, q);
        Rat adv = exact_advantage(p).advantage;
        for (unsigned t : {2u, 3u}) {
            GoodSetParams s;
            s.t = t;
            for (unsigned j = 2; j <= t; ++j) s.dev.push_back(Rat(1 + j, 2));
            s.beta = Rat(1, 2);
            GoodSetQuantities gq = good_set_quantities(p, s);
            CHECK(adv <= gq.max_ratio_dev + gq.func_mass_outside);
        }
    }
}

TEST_CASE("monotone in q, antitone in m") {
    for (unsigned n : {3u, 4u}) {
        Rat prev = 0;
        for (std::uint64_t q = 1; q <= 8; ++q) {
            Rat adv = exact_advantage(Params(n, 1, q)).advantage;
            CHECK(adv >= prev);
            prev = adv;
        }
        prev = exact_advantage(Params(n, 0, 4)).advantage;
        for (unsigned m = 1; m < n; ++m) {
            Rat adv = exact_advantage(Params(n, m, 4)).advantage;
            CHECK(adv <= prev);
            prev = adv;
        }
    }
}
