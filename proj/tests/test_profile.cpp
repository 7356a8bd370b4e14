#include <doctest.h>

#include "truncdist/profile.hpp"
#include "truncdist/rng.hpp"

#include <algorithm>
#include <map>

using namespace truncdist;

namespace {

// Brute-force moment oracle: walk the alphabet^q cube and count col_j from
// its definition as equal-valued index j-tuples (here via multiplicities of
// a counting array, summed with plain integers).
std::uint64_t cube_col(const std::vector<std::uint64_t>& omega, unsigned j) {
    std::map<std::uint64_t, std::uint64_t> counts;
    for (auto s : omega) ++counts[s];
    std::uint64_t total = 0;
    for (auto& [sym, d] : counts) {
        if (d < j) continue;
        std::uint64_t c = 1;
        for (unsigned i = 0; i < j; ++i) c = c * (d - i) / (i + 1);
        total += c;
    }
    return total;
}

template <typename Fn>
void for_each_omega(std::uint64_t alphabet, std::uint64_t q, Fn&& fn) {
    std::vector<std::uint64_t> omega(q, 0);
    for (;;) {
        fn(omega);
        std::size_t pos = 0;
        while (pos < q && ++omega[pos] == alphabet) omega[pos++] = 0;
        if (pos == q) break;
    }
}

}  // namespace

TEST_CASE("profile_of sorts multiplicities") {
    CHECK(profile_of({0, 1, 0, 1}).parts == std::vector<std::uint64_t>{2, 2});
    CHECK(profile_of({3, 3, 3}).parts == std::vector<std::uint64_t>{3});
    CHECK(profile_of({4, 2, 9, 7}).parts == std::vector<std::uint64_t>{1, 1, 1, 1});
    CHECK(profile_of({}).parts.empty());
    CHECK(profile_of({5, 1, 5, 1, 5}).parts == std::vector<std::uint64_t>{3, 2});
}

TEST_CASE("profile is invariant under permuting the sequence") {
    SplitMix64 rng(11);
    for (int round = 0; round < 50; ++round) {
        ReplySequence omega;
        for (int i = 0; i < 12; ++i) omega.push_back(rng.next_bits(2));
        ReplySequence shuffled = omega;
        for (std::size_t k = shuffled.size(); k > 1; --k)
            std::swap(shuffled[k - 1], shuffled[rng.next() % k]);
        CHECK(profile_of(omega) == profile_of(shuffled));
    }
}

TEST_CASE("collision counts from profiles") {
    MultiplicityProfile two_two{{2, 2}};
    CHECK(collision_count(two_two, 2) == 2);
    MultiplicityProfile three{{3}};
    CHECK(collision_count(three, 2) == 3);
    CHECK(collision_count(three, 3) == 1);
    MultiplicityProfile ones{{1, 1, 1, 1, 1}};
    for (unsigned j = 2; j <= 5; ++j) CHECK(collision_count(ones, j) == 0);

    // non-increasing in j, zero beyond the largest part
    MultiplicityProfile p{{4, 3, 1}};
    std::vector<Int> cols = collision_counts(p, 6);
    for (std::size_t i = 1; i < cols.size(); ++i) CHECK(cols[i] <= cols[i - 1]);
    CHECK(collision_count(p, 5) == 0);
}

TEST_CASE("expected collision count matches the cube walk") {
    // oracle: mean of col_j over all alphabet^q sequences, exact rationals
    auto brute_mean = [](std::uint64_t alphabet, std::uint64_t q, unsigned j) {
        Int sum = 0, total = 0;
        for_each_omega(alphabet, q, [&](const ReplySequence& omega) {
            sum += cube_col(omega, j);
            ++total;
        });
        return Rat(sum, total);
    };

    CHECK(brute_mean(2, 2, 2) == Rat(1, 2));
    CHECK(expected_collision_count(Params(2, 1, 2), 2) == Rat(1, 2));

    CHECK(brute_mean(4, 3, 3) == Rat(1, 16));
    CHECK(expected_collision_count(Params(4, 2, 3), 3) == Rat(1, 16));

    CHECK(expected_collision_count(Params(4, 2, 3), 4) == 0);  // q < j

    for (unsigned nm : {1u, 2u})
        for (std::uint64_t q = 2; q <= 5; ++q)
            for (unsigned j = 2; j <= 4; ++j)
                CHECK(brute_mean(std::uint64_t(1) << nm, q, j) ==
                      expected_collision_count(Params(nm + 4, 4, q), j));
}

TEST_CASE("variance bound holds with exact brute-force variance") {
    auto brute_var = [](std::uint64_t alphabet, std::uint64_t q, unsigned j) {
        Int sum = 0, sum_sq = 0, total = 0;
        for_each_omega(alphabet, q, [&](const ReplySequence& omega) {
            std::uint64_t c = cube_col(omega, j);
            sum += c;
            sum_sq += Int(c) * Int(c);
            ++total;
        });
        Rat mean(sum, total);
        return Rat(sum_sq, total) - mean * mean;
    };

    // (n-m=1, q=2, j=2): bound 1/2, true variance 1/4
    CHECK(collision_variance_bound(Params(2, 1, 2), 2) == Rat(1, 2));
    CHECK(brute_var(2, 2, 2) == Rat(1, 4));

    // (n-m=2, q=4, j=3): bound C(3,2) C(4,3) (1/16)(1 + 1) = 3/2
    CHECK(collision_variance_bound(Params(6, 4, 4), 3) == Rat(3, 2));
    CHECK(brute_var(4, 4, 3) <= Rat(3, 2));

    CHECK(collision_variance_bound(Params(4, 2, 2), 3) == 0);  // q < j

    for (unsigned nm : {1u, 2u})
        for (std::uint64_t q = 2; q <= 5; ++q)
            for (unsigned j = 2; j <= 4; ++j)
                CHECK(brute_var(std::uint64_t(1) << nm, q, j) <=
                      collision_variance_bound(Params(nm + 4, 4, q), j));
}

TEST_CASE("profile enumeration: counts, caps and order") {
    {  // (n=2,m=1,q=2) uncapped: {(1,1): 2, (2): 2}, total 4 = A^q
        std::map<std::vector<std::uint64_t>, Int> got;
        enumerate_profiles(Params(2, 1, 2), false,
                           [&](const ProfileWeight& w) { got[w.profile.parts] = w.count; });
        CHECK(got.size() == 2);
        CHECK(got[{1, 1}] == 2);
        CHECK(got[{2}] == 2);
    }
    {  // capped at the bucket: only (2,2) with count 6 = 4!/(2!2!)
        std::vector<ProfileWeight> got;
        enumerate_profiles(Params(2, 1, 4), true,
                           [&](const ProfileWeight& w) { got.push_back(w); });
        REQUIRE(got.size() == 1);
        CHECK(got[0].profile.parts == std::vector<std::uint64_t>{2, 2});
        CHECK(got[0].count == 6);
    }
    {  // alphabet-generic core: A = 3, q = 3 sums to 27
        ProfileEnumerator en(3, 3, 3);
        Int total = 0;
        ProfileWeight w;
        while (en.next(w)) total += w.count;
        CHECK(total == 27);
    }
    {  // counts sum to A^q across a grid
        for (unsigned n = 2; n <= 6; ++n)
            for (unsigned m = 0; m < n; m += 2)
                for (std::uint64_t q : {3ULL, 5ULL, 9ULL}) {
                    if (q > (std::uint64_t(1) << n)) continue;
                    Params p(n, m, q);
                    Int total = 0;
                    enumerate_profiles(p, false, [&](const ProfileWeight& w) { total += w.count; });
                    CHECK(total == pow(Int(p.alphabet_size()), unsigned(q)));
                }
    }
    {  // lexicographically decreasing stream
        std::vector<std::vector<std::uint64_t>> seq;
        enumerate_profiles(Params(5, 2, 7), false,
                           [&](const ProfileWeight& w) { seq.push_back(w.profile.parts); });
        for (std::size_t i = 1; i < seq.size(); ++i)
            CHECK(std::lexicographical_compare(seq[i].begin(), seq[i].end(), seq[i - 1].begin(),
                                               seq[i - 1].end()));
        // partitions of 7 into at most min(7, 8) parts: p(7) = 15
        CHECK(seq.size() == 15);
    }
}

TEST_CASE("profile stream limit raises size_error") {
    CHECK_THROWS_AS(enumerate_profiles(Params(8, 4, 64), false, [](const ProfileWeight&) {},
                                       /*profile_limit=*/100),
                    size_error);
}

TEST_CASE("log-space count tracks the exact count") {
    Params p(10, 5, 12);
    enumerate_profiles(p, false, [&](const ProfileWeight& w) {
        signed long e = 0;
        double mant = mpz_get_d_2exp(&e, w.count.backend().data());
        long double ref = std::log(std::fabs(mant)) + e * 0.693147180559945309L;
        CHECK(std::fabs(static_cast<double>(log_profile_count(w.profile, p) - ref)) <=
              1e-12 * std::max(1.0, std::fabs(static_cast<double>(ref))));
    });
}
