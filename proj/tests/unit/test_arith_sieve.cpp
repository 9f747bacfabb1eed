#include <gtest/gtest.h>

#include <random>

#include "pfv/arith_sieve.hpp"
#include "support/oracles.hpp"

using namespace pfv;

TEST(PrimesUpTo, SmallBounds) {
    EXPECT_TRUE(primes_up_to(0).empty());
    EXPECT_TRUE(primes_up_to(1).empty());
    EXPECT_EQ(primes_up_to(2), (std::vector<u64>{2}));
    EXPECT_EQ(primes_up_to(10), (std::vector<u64>{2, 3, 5, 7}));
}

TEST(PrimesUpTo, MatchesTrialDivisionCount) {
    const auto primes = primes_up_to(1'000'000);
    u64 count = 0;
    for (u64 n = 2; n <= 1'000'000; ++n)
        if (oracle::is_prime_trial(n)) ++count;
    EXPECT_EQ(primes.size(), count);
    EXPECT_EQ(primes.size(), 78498u);
}

TEST(PrimesUpTo, MatchesEratosthenesAcrossSegments) {
    EXPECT_EQ(primes_up_to(3'000'000), oracle::eratosthenes(3'000'000));
}

TEST(PrimesUpTo, CapacityError) { EXPECT_THROW(primes_up_to(max_prime_list_bound + 1), CapacityError); }

TEST(BuildTables, SmallValues) {
    auto t = build_tables(1, 100);
    EXPECT_EQ(t.omega(1), 0);
    EXPECT_EQ(t.mobius(1), 1);
    EXPECT_EQ(t.omega(12), 3);
    EXPECT_EQ(t.mobius(12), 0);
    EXPECT_EQ(t.omega(30), 3);
    EXPECT_EQ(t.mobius(30), -1);
    EXPECT_EQ(liouville(t, 1), 1);
    EXPECT_EQ(liouville(t, 2), -1);
    EXPECT_EQ(liouville(t, 8), -1);
}

TEST(BuildTables, MatchesTrialDivision) {
    for (u64 lo : {u64{1}, u64{999'000}, u64{1'000'000'000'000}}) {
        auto t = build_tables(lo, lo + 5000);
        for (u64 n = lo; n < lo + 5000; ++n) {
            ASSERT_EQ(t.omega(n), oracle::omega_trial(n)) << n;
            ASSERT_EQ(t.mobius(n), oracle::mobius_trial(n)) << n;
        }
    }
}

TEST(BuildTables, TypeInvariants) {
    auto t = build_tables(1, 200'000);
    for (u64 n = 1; n < 200'000; ++n) {
        ASSERT_EQ(t.is_squarefree(n), t.mobius(n) != 0);
        if (t.is_squarefree(n)) {
            ASSERT_EQ(t.mobius(n), (t.omega(n) % 2) ? -1 : 1);
        }
    }
}

TEST(BuildTables, MobiusDivisorSums) {
    auto t = build_tables(1, 10'001);
    for (u64 n = 1; n <= 10'000; ++n) {
        int s = 0;
        for (u64 d = 1; d <= n; ++d)
            if (n % d == 0) s += t.mobius(d);
        ASSERT_EQ(s, n == 1 ? 1 : 0) << n;
    }
}

TEST(BuildTables, CompletelyAdditiveOnCoprimePairs) {
    auto t = build_tables(1, 1'000'001);
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<u64> dist(1, 1'000'000);
    int checked = 0;
    while (checked < 10'000) {
        u64 m = dist(rng), n = dist(rng);
        if (std::gcd(m, n) != 1) continue;
        u64 mn = m * n;
        ASSERT_EQ(oracle::omega_trial(mn), t.omega(m) + t.omega(n));
        ASSERT_EQ((oracle::omega_trial(mn) % 2 ? -1 : 1), t.liouville(m) * t.liouville(n));
        ++checked;
    }
}

TEST(BuildTables, DeterministicAcrossThreadsAndSegments) {
    SieveOptions base;
    base.exec = {1, 1 << 20};
    auto ref = build_tables(1, 1'000'000, base);
    for (unsigned threads : {2u, 8u}) {
        for (std::size_t seg : {std::size_t{1} << 10, std::size_t{4093}, std::size_t{1} << 16}) {
            SieveOptions o;
            o.exec = {threads, seg};
            auto t = build_tables(1, 1'000'000, o);
            ASSERT_EQ(t.omega_values(), ref.omega_values());
            ASSERT_EQ(t.mobius_values(), ref.mobius_values());
            ASSERT_TRUE(t.squarefree_mask() == ref.squarefree_mask());
        }
    }
}

TEST(BuildTables, Errors) {
    EXPECT_THROW(build_tables(0, 10), UsageError);
    EXPECT_THROW(build_tables(10, 10), UsageError);
    SieveOptions o;
    o.max_hi = 1000;
    EXPECT_THROW(build_tables(1, 1001, o), CapacityError);
    auto t = build_tables(5, 10);
    EXPECT_THROW(t.omega(4), DomainError);
    EXPECT_THROW(t.liouville(10), DomainError);
}
