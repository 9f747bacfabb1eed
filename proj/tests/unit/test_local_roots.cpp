#include <gtest/gtest.h>

#include "pfv/local_roots.hpp"
#include "support/oracles.hpp"

using namespace pfv;

namespace {

const std::vector<std::vector<long>> kPolys = {
    {1, 0, 1},        // x^2 + 1
    {0, 1, 1},        // x^2 + x
    {2, 0, 0, 1},     // x^3 + 2
    {5, 0, 0, 1},     // x^3 + 5
    {3, 0, 1},        // x^2 + 3
    {2, 0, 3, 0, 1},  // (x^2 + 1)(x^2 + 2)
    {0, 1},           // x
    {-4, 0, 0, 2},    // 2x^3 - 4
    {8, 0, 0, 0, 0, 3},
    {12, 0, 4},       // 4x^2 + 12: content 4
};

IntPolynomial poly(const std::vector<long>& c) { return IntPolynomial(std::vector<BigInt>(c.begin(), c.end())); }

std::vector<u64> to_u64s(const std::vector<BigInt>& v) {
    std::vector<u64> out;
    for (const auto& x : v) out.push_back(to_u64(x));
    return out;
}

}  // namespace

TEST(RootsModP, Examples) {
    IntPolynomial f({1, 0, 1});
    EXPECT_EQ(roots_mod_p(f, 5), (std::vector<u64>{2, 3}));
    EXPECT_TRUE(roots_mod_p(f, 3).empty());
    EXPECT_EQ(roots_mod_p(f, 2), (std::vector<u64>{1}));
    EXPECT_THROW(roots_mod_p(f, 9), UsageError);
}

TEST(RootsModP, MatchesScanAboveThreshold) {
    RootOptions o;
    o.scan_threshold = 2;  // force the splitting path
    for (const auto& c : kPolys) {
        IntPolynomial f = poly(c);
        for (u64 p : primes_up_to(3000)) {
            auto got = roots_mod_p(f, p, o);
            ASSERT_EQ(got, oracle::roots_mod(c, p)) << f.to_string() << " p=" << p;
            ASSERT_EQ(count_roots_mod_p(f, p, o), got.size()) << f.to_string() << " p=" << p;
        }
    }
}

TEST(RootsModP, LargePrimes) {
    IntPolynomial f({1, 0, 1});
    for (u64 p : {1'000'000'007ull, 998'244'353ull, 4'611'686'018'427'387'847ull}) {
        auto r = roots_mod_p(f, p);
        ASSERT_EQ(r.size(), p % 4 == 1 ? 2u : 0u) << p;
        for (u64 x : r) ASSERT_EQ((static_cast<u128>(x) * x + 1) % p, 0u);
    }
}

TEST(CountRootsModP, Examples) {
    EXPECT_EQ(count_roots_mod_p(IntPolynomial({1, 0, 1}), 13), 2u);
    EXPECT_EQ(count_roots_mod_p(IntPolynomial({1, 0, 1}), 7), 0u);
    EXPECT_EQ(count_roots_mod_p(IntPolynomial({2, 0, 0, 1}), 2), 1u);
    // p | lc(f): falls back to scanning.
    EXPECT_EQ(count_roots_mod_p(IntPolynomial({1, 1, 3}), 3), 1u);
}

TEST(LiftRoots, Examples) {
    IntPolynomial f({1, 0, 1});
    auto a = lift_roots(f, 5, 2);
    EXPECT_EQ(to_u64s(a.roots), (std::vector<u64>{7, 18}));
    EXPECT_EQ(a.rho, 2);
    EXPECT_FALSE(a.is_bad);
    auto b = lift_roots(f, 2, 2);
    EXPECT_TRUE(b.roots.empty());
    EXPECT_EQ(b.rho, 0);
    EXPECT_TRUE(b.is_bad);
    auto c = lift_roots(IntPolynomial({3, 0, 1}), 3, 2);
    EXPECT_TRUE(c.roots.empty());
    EXPECT_EQ(c.rho, 0);
}

TEST(LiftRoots, MatchesEnumerationForPrimePowersUpTo1e4) {
    for (const auto& c : kPolys) {
        IntPolynomial f = poly(c);
        const BigInt bad = resultant_f_fprime(f) * f.leading();
        for (u64 p : primes_up_to(10'000)) {
            u64 q = p;
            for (unsigned k = 1; q <= 10'000; ++k, q *= p) {
                auto got = lift_roots(f, p, k, bad);
                auto want = oracle::roots_mod(c, q);
                ASSERT_EQ(to_u64s(got.roots), want) << f.to_string() << " " << p << "^" << k;
                ASSERT_EQ(got.rho, BigInt(static_cast<unsigned long>(want.size())));
                if (!got.is_bad) {
                    ASSERT_LE(got.rho, f.degree());
                }
            }
        }
    }
}

TEST(LiftRoots, WholeClassShortcutAtHighPowers) {
    // x^2 mod 2^k is not squarefree; use 8x^2 + 8: every residue is a root mod 8.
    IntPolynomial f({8, 0, 8});
    auto r = lift_roots(f, 2, 3, BigInt(2));
    EXPECT_EQ(r.rho, 8);
    auto r5 = lift_roots(f, 2, 5, BigInt(2));
    EXPECT_EQ(to_u64s(r5.roots), oracle::roots_mod({8, 0, 8}, 32));
}

TEST(LiftRoots, RhoCapElidesRoots) {
    IntPolynomial f({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1});
    RootOptions o;
    o.rho_cap = 10;
    auto r = lift_roots(f, 2, 10, BigInt(2), o);
    EXPECT_TRUE(r.roots_elided);
    EXPECT_TRUE(r.roots.empty());
    EXPECT_EQ(r.rho, 512);  // every even residue mod 2^10
}

TEST(RhoPrimePower, GoodPrimeStability) {
    for (const auto& c : kPolys) {
        IntPolynomial f = poly(c);
        const BigInt bad = resultant_f_fprime(f) * f.leading();
        if (bad == 0) continue;
        for (u64 p : primes_up_to(1000)) {
            if (is_bad_prime(bad, p)) continue;
            BigInt r1 = rho_prime_power(f, p, 1, bad);
            for (unsigned k = 2; k <= 4; ++k) {
                ASSERT_EQ(lift_roots(f, p, k, bad).rho, r1) << f.to_string() << " p=" << p;
            }
        }
    }
}

TEST(RhoComposite, ExamplesAndMultiplicativity) {
    IntPolynomial f({1, 0, 1});
    EXPECT_EQ(rho_composite(f, 1, 2), 1);
    EXPECT_EQ(rho_composite(f, 65, 2), 4);
    EXPECT_EQ(rho_composite(f, 6, 2), 0);
    EXPECT_THROW(rho_composite(f, 12, 2), UsageError);
    EXPECT_THROW(rho_composite(f, 0, 2), UsageError);
    for (const auto& c : kPolys) {
        IntPolynomial g = poly(c);
        const BigInt bad = resultant_f_fprime(g) * g.leading();
        for (u64 d1 = 1; d1 <= 100; ++d1) {
            if (oracle::mobius_trial(d1) == 0) continue;
            for (u64 d2 = 1; d2 <= 100; ++d2) {
                if (oracle::mobius_trial(d2) == 0 || std::gcd(d1, d2) != 1) continue;
                ASSERT_EQ(rho_composite(g, d1 * d2, 2, bad), rho_composite(g, d1, 2, bad) * rho_composite(g, d2, 2, bad));
            }
        }
    }
}

TEST(RhoComposite, DegreeBoundOnSquarefreeModuli) {
    for (const auto& c : {std::vector<long>{1, 0, 1}, std::vector<long>{2, 0, 0, 1}, std::vector<long>{5, 0, 0, 1}}) {
        IntPolynomial f = poly(c);
        const BigInt bad = resultant_f_fprime(f) * f.leading();
        for (u64 d = 1; d <= 10'000; ++d) {
            int mu = oracle::mobius_trial(d);
            if (mu == 0) continue;
            std::size_t omega = oracle::factor_trial(d).size();
            BigInt bound = 1;
            for (std::size_t i = 0; i < omega; ++i) bound *= f.degree();
            for (unsigned k : {1u, 2u})
                ASSERT_LE(rho_composite(f, d, k, bad), bound) << f.to_string() << " d=" << d;
        }
    }
}

TEST(RhoTable, CachesConsistently) {
    RhoTable t(IntPolynomial({1, 0, 1}));
    EXPECT_EQ(t.rho(5, 2), 2);
    EXPECT_EQ(t.rho(5, 2), 2);
    EXPECT_EQ(t.rho(2, 2), 0);
    EXPECT_EQ(t.rho(2, 1), 1);
}
