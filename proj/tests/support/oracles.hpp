#pragma once

// Brute-force reference implementations. Deliberately naive and independent
// of the library's algorithms.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline std::vector<u64> eratosthenes(u64 n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

inline bool is_prime_trial(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// (prime, exponent) pairs of n >= 1 by trial division.
inline std::vector<std::pair<u64, int>> factor_trial(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.push_back({d, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline int omega_trial(u64 n) {
    int s = 0;
    for (auto [p, e] : factor_trial(n)) s += e;
    return s;
}

inline int mobius_trial(u64 n) {
    int s = 1;
    for (auto [p, e] : factor_trial(n)) {
        if (e > 1) return 0;
        s = -s;
    }
    return s;
}

/// k-freeness of |v| by trial division up to the cube root of the remaining
/// cofactor; what is left has at most two prime factors.
inline bool kfree_trial(const mpz_class& value, unsigned k, const std::vector<u64>& primes) {
    mpz_class v = abs(value);
    if (v == 0) return false;
    for (u64 p : primes) {
        mpz_class pb = static_cast<unsigned long>(p);
        if (pb * pb * pb > v) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
            mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
            ++e;
        }
        if (e >= k) return false;
    }
    if (k == 2 && v > 1 && mpz_perfect_square_p(v.get_mpz_t())) return false;
    return true;
}

/// k-freeness of |v| by testing p^k | v for every prime p <= |v|^(1/k).
inline bool kfree_root_trial(const mpz_class& value, unsigned k, const std::vector<u64>& primes) {
    mpz_class v = abs(value);
    if (v == 0) return false;
    mpz_class r;
    mpz_root(r.get_mpz_t(), v.get_mpz_t(), k);
    if (primes.empty() || r > static_cast<unsigned long>(primes.back())) throw std::runtime_error("prime list too short");
    for (u64 p : primes) {
        if (r < static_cast<unsigned long>(p)) break;
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
        if (mpz_divisible_p(v.get_mpz_t(), pk.get_mpz_t())) return false;
    }
    return true;
}

inline mpz_class eval(const std::vector<long>& c, const mpz_class& x) {
    mpz_class acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

/// All residues r in [0, q) with q | f(r), by stepping forward differences
/// of f modulo q (every residue is visited).
inline std::vector<u64> roots_mod(const std::vector<long>& c, u64 q) {
    const std::size_t d = c.size() - 1;
    std::vector<u64> diff(d + 1);
    // Delta^i f(0) from f(0), ..., f(d).
    std::vector<mpz_class> vals;
    for (std::size_t x = 0; x <= d; ++x) vals.push_back(eval(c, static_cast<unsigned long>(x)));
    for (std::size_t i = 0; i <= d; ++i) {
        mpz_class r = vals[0];
        mpz_class qb = static_cast<unsigned long>(q);
        mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), qb.get_mpz_t());
        diff[i] = r.get_ui();
        for (std::size_t j = 0; j + 1 < vals.size(); ++j) vals[j] = vals[j + 1] - vals[j];
        vals.pop_back();
    }
    std::vector<u64> out;
    for (u64 r = 0; r < q; ++r) {
        if (diff[0] == 0) out.push_back(r);
        for (std::size_t i = 0; i < d; ++i) {
            diff[i] += diff[i + 1];
            if (diff[i] >= q) diff[i] -= q;
        }
    }
    return out;
}

/// Determinant by Bareiss fraction-free elimination.
inline mpz_class determinant(std::vector<std::vector<mpz_class>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// Res(f, g) as the determinant of the Sylvester matrix (ascending coefficients).
inline mpz_class sylvester_resultant(const std::vector<long>& f, const std::vector<long>& g) {
    const std::size_t m = f.size() - 1, n = g.size() - 1;
    const std::size_t size = m + n;
    std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = f[m - j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = g[n - j];
    return determinant(s);
}

inline std::vector<long> derivative(const std::vector<long>& f) {
    std::vector<long> d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(static_cast<long>(i) * f[i]);
    return d;
}

}  // namespace oracle
