#pragma once

// Word-size and arbitrary-precision integer helpers shared by the sieves,
// root finders and factorization code.

#include <gmpxx.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "pfv/error.hpp"

namespace pfv {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;
using BigInt = mpz_class;

inline constexpr u128 u128_max = ~static_cast<u128>(0);

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline u64 invmod(u64 a, u64 m) {
    i128 t = 0, new_t = 1;
    i128 r = m, new_r = a % m;
    while (new_r != 0) {
        i128 q = r / new_r;
        i128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw InternalError("invmod: argument not invertible");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

/// Deterministic Miller-Rabin; the base set is exact for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline u64 isqrt_u64(u64 n) {
    u128 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return static_cast<u64>(r);
}

/// Overflow-checked x^k for u128; returns false on overflow.
inline bool checked_pow(u128 x, unsigned k, u128& out) {
    u128 r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (x != 0 && r > u128_max / x) return false;
        r *= x;
    }
    out = r;
    return true;
}

/// floor(n^(1/k)) for k >= 1.
inline u128 iroot_u128(u128 n, unsigned k) {
    if (k == 1 || n < 2) return n;
    long double est = std::pow(static_cast<long double>(n), 1.0L / static_cast<long double>(k));
    u128 r = est < 1 ? 0 : static_cast<u128>(est);
    u128 pw;
    while (r > 0 && (!checked_pow(r, k, pw) || pw > n)) --r;
    while (checked_pow(r + 1, k, pw) && pw <= n) ++r;
    return r;
}

inline u64 iroot_u64(u64 n, unsigned k) { return static_cast<u64>(iroot_u128(n, k)); }

/// True iff n = r^k for some integer r (n = 0 and n = 1 count).
inline bool is_perfect_power(u128 n, unsigned k) {
    u128 r = iroot_u128(n, k);
    u128 pw;
    return checked_pow(r, k, pw) && pw == n;
}

inline bool is_perfect_power(const BigInt& n, unsigned k) {
    if (n < 0) return false;
    BigInt root;
    return mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0;
}

inline BigInt to_big(u128 v) {
    BigInt hi = static_cast<unsigned long>(static_cast<u64>(v >> 64));
    BigInt lo = static_cast<unsigned long>(static_cast<u64>(v));
    return (hi << 64) + lo;
}

inline BigInt to_big(i128 v) {
    if (v >= 0) return to_big(static_cast<u128>(v));
    return -to_big(static_cast<u128>(-(v + 1)) + 1);
}

inline BigInt to_big(u64 v) { return BigInt(static_cast<unsigned long>(v)); }
inline BigInt to_big(i64 v) { return BigInt(static_cast<long>(v)); }

/// Number of significant bits of |v| (0 for v = 0).
inline std::size_t bit_length(const BigInt& v) {
    return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline bool fits_u64(const BigInt& v) { return v >= 0 && bit_length(v) <= 64; }

inline u64 to_u64(const BigInt& v) {
    if (!fits_u64(v)) throw InternalError("to_u64: value out of range");
    u64 out = 0;
    std::size_t count = 0;
    mpz_export(&out, &count, -1, sizeof(u64), 0, 0, v.get_mpz_t());
    return out;
}

inline u128 to_u128(const BigInt& v) {
    if (v < 0 || bit_length(v) > 128) throw InternalError("to_u128: value out of range");
    BigInt hi = v >> 64;
    BigInt lo = v - (hi << 64);
    return (static_cast<u128>(to_u64(hi)) << 64) | to_u64(lo);
}

inline i128 to_i128(const BigInt& v) {
    if (bit_length(v) > 126) throw InternalError("to_i128: value out of range");
    return v < 0 ? -static_cast<i128>(to_u128(-v)) : static_cast<i128>(to_u128(v));
}

/// v mod m in [0, m) for signed big v.
inline u64 mod_u64(const BigInt& v, u64 m) {
    return static_cast<u64>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m)));
}

inline std::string to_string(u128 v) { return to_big(v).get_str(); }
inline std::string to_string(i128 v) { return to_big(v).get_str(); }

/// ceil(n^(1/k)) for big n >= 0.
inline BigInt ceil_root(const BigInt& n, unsigned k) {
    BigInt r;
    int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    if (!exact) r += 1;
    return r;
}

inline BigInt floor_root(const BigInt& n, unsigned k) {
    BigInt r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

}  // namespace pfv
