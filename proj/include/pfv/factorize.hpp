#pragma once

// Integer factorization for diagnostic code paths: trial division by primes
// up to 10^6, then Pollard-Brent rho with fixed seeds on what remains.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pfv/arith_sieve.hpp"
#include "pfv/error.hpp"
#include "pfv/numeric.hpp"

namespace pfv {

struct PrimeFactor {
    BigInt p;
    unsigned e = 0;
    friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

inline constexpr u64 trial_division_bound = 1'000'000;

inline const std::vector<u64>& trial_primes() {
    static const std::vector<u64> primes = primes_up_to(trial_division_bound);
    return primes;
}

namespace detail {

inline u64 rho_u64(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1; c < 64; ++c) {
        auto step = [&](u64 x) { return addmod(mulmod(x, x, n), c, n); };
        u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
        u64 r = 1;
        constexpr u64 batch = 128;
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = step(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(batch, r - k); ++i) {
                    y = step(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += batch;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1 && r < (u64{1} << 28));
        if (g == n) {
            do {
                ys = step(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
    }
    throw InternalError("rho failed to split " + std::to_string(n));
}

inline BigInt rho_big(const BigInt& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1; c < 64; ++c) {
        auto step = [&](const BigInt& x) {
            BigInt r = x * x + c;
            mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
            return r;
        };
        BigInt y = 2, x = 2, q = 1, g = 1, ys = 2;
        u64 r = 1;
        constexpr u64 batch = 128;
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = step(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(batch, r - k); ++i) {
                    y = step(y);
                    BigInt diff = abs(x - y);
                    q = q * diff;
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += batch;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1 && r < (u64{1} << 26));
        if (g == n) {
            do {
                ys = step(ys);
                BigInt diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
    }
    throw InternalError("rho failed to split " + n.get_str());
}

inline bool is_probable_prime(const BigInt& n) {
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

/// Splits n (> 1, no prime factors below the trial bound) into primes.
inline void split_cofactor(const BigInt& n, unsigned mult, std::vector<PrimeFactor>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out.push_back({n, mult});
        return;
    }
    for (unsigned e = static_cast<unsigned>(bit_length(n)); e >= 2; --e) {
        BigInt root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) {
            split_cofactor(root, mult * e, out);
            return;
        }
    }
    BigInt d = fits_u64(n) ? BigInt(static_cast<unsigned long>(rho_u64(to_u64(n)))) : rho_big(n);
    split_cofactor(d, mult, out);
    split_cofactor(n / d, mult, out);
}

}  // namespace detail

/// Prime factorization of |n|, ascending by prime. n = 0 is rejected.
inline std::vector<PrimeFactor> factorize(const BigInt& n) {
    if (n == 0) throw UsageError("factorize: zero has no factorization");
    BigInt m = abs(n);
    std::vector<PrimeFactor> out;
    if (fits_u64(m)) {
        u64 v = to_u64(m);
        for (u64 p : trial_primes()) {
            if (static_cast<u128>(p) * p * p > v) break;
            if (v % p != 0) continue;
            unsigned e = 0;
            do {
                v /= p;
                ++e;
            } while (v % p == 0);
            out.push_back({BigInt(static_cast<unsigned long>(p)), e});
        }
        m = BigInt(static_cast<unsigned long>(v));
    }
    for (u64 p : trial_primes()) {
        if (fits_u64(m)) break;
        // Past the cube root the cofactor has at most two prime factors.
        if (BigInt(static_cast<unsigned long>(p)) * p * p > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) continue;
        unsigned e = 0;
        do {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        } while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0);
        out.push_back({BigInt(static_cast<unsigned long>(p)), e});
    }
    std::vector<PrimeFactor> rest;
    detail::split_cofactor(m, 1, rest);
    for (auto& f : rest) out.push_back(std::move(f));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
    // Merge repeated primes found on separate branches.
    std::vector<PrimeFactor> merged;
    for (auto& f : out) {
        if (!merged.empty() && merged.back().p == f.p) merged.back().e += f.e;
        else merged.push_back(std::move(f));
    }
    return merged;
}

}  // namespace pfv
