#pragma once

// Euler-product densities prod_p (1 - rho_f(p^k)/p^k) over p <= P, with a
// one-sided tail interval for the full infinite product.
//
// Tail: for p > P every factor lies in [1 - d/p^k, 1] (d bounds rho at good
// primes). Using -log(1 - x) <= 2x for x <= 1/2, valid once p^k >= 2d,
//     sum_{p > P} -log(factor) <= sum_{m > P} 2d/m^k <= 2d / ((k-1) P^(k-1)),
// so the full product lies in [value * exp(-tail), value].

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pfv/arith_sieve.hpp"
#include "pfv/error.hpp"
#include "pfv/local_roots.hpp"
#include "pfv/numeric.hpp"
#include "pfv/parallel.hpp"
#include "pfv/polynomial.hpp"

namespace pfv {

struct DensityResult {
    long double value = 1;  ///< partial product over the included primes p <= P
    long double lower = 0;  ///< rigorous lower bound on the full product
    long double upper = 1;  ///< rigorous upper bound on the full product
    long double tail = 0;   ///< bound on the tail's sum of -log(factor)
    u64 P = 0;
    unsigned k = 2;
    int degree = 0;
    std::vector<u64> bad_primes;
    std::string coeffs;  ///< ascending coefficients, empty for named constants
    std::string label;

    bool contains(long double x) const noexcept { return lower <= x && x <= upper; }
};

struct DensityOptions {
    ExecPolicy exec{};
    RootOptions roots{};
    /// Primes per reduction chunk. Fixed so that results do not depend on
    /// the thread count.
    std::size_t chunk = 4096;
};

namespace detail {

struct LogSum {
    long double sum = 0, comp = 0;
    bool zero = false;

    void add(long double x) {
        long double y = x - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

/// Sum of log(factor(p)) over `primes` in fixed chunks, reduced in chunk order.
template <class Factor>
LogSum log_product(const std::vector<u64>& primes, const DensityOptions& opts, Factor&& factor) {
    const std::size_t chunk = std::max<std::size_t>(opts.chunk, 1);
    const std::size_t nchunks = (primes.size() + chunk - 1) / chunk;
    std::vector<LogSum> partial(nchunks);
    parallel_for(nchunks, opts.exec.threads, [&](std::size_t c) {
        LogSum s;
        std::size_t end = std::min(primes.size(), (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < end; ++i) {
            long double x = factor(primes[i]);  // rho / p^k, in [0, 1]
            if (x >= 1) {
                s.zero = true;
                continue;
            }
            if (x > 0) s.add(std::log1p(-x));
        }
        partial[c] = s;
    });
    LogSum total;
    for (const auto& s : partial) {
        total.zero = total.zero || s.zero;
        total.add(s.sum);
        total.add(-s.comp);
    }
    return total;
}

inline DensityResult finish(DensityResult r, const LogSum& logs, long double tail, bool tail_valid) {
    if (logs.zero) {
        r.value = r.lower = r.upper = 0;
        r.tail = tail;
        return r;
    }
    r.value = std::exp(logs.sum);
    r.upper = r.value;
    r.tail = tail;
    r.lower = tail_valid ? r.value * std::exp(-tail) : 0.0L;
    return r;
}

inline long double ld_pow(long double b, unsigned e) {
    long double r = 1;
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace detail

/// prod_{p <= P} (1 - rho_f(p^k)/p^k) with a rigorous tail interval.
inline DensityResult density(const IntPolynomial& f, unsigned k, u64 P, const DensityOptions& opts = {}) {
    if (k < 2) throw UsageError("density: k must be at least 2");
    if (f.degree() < 1) throw UsageError("density: degree must be at least 1");
    DensityResult r;
    r.P = P;
    r.k = k;
    r.degree = f.degree();
    r.coeffs = f.to_string();
    r.label = "density";
    if (has_fixed_kth_power(f, k)) {
        r.value = r.lower = r.upper = 0;
        return r;
    }
    const BigInt res = resultant_f_fprime(f);
    if (res == 0) throw HypothesisError("density: f has a repeated factor (Res(f, f') = 0)");
    const BigInt bad = res * f.leading();
    const auto primes = primes_up_to(P);

    BigInt rest = abs(bad);
    for (u64 p : primes) {
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p) == 0) continue;
        r.bad_primes.push_back(p);
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    }
    if (rest != 1)
        throw UsageError("density: P = " + std::to_string(P) +
                         " is below the largest bad prime (a prime factor of Res(f, f') * lc(f) exceeds P); increase P");

    const auto logs = detail::log_product(primes, opts, [&](u64 p) {
        BigInt rho = rho_prime_power(f, p, k, bad, opts.roots);
        return static_cast<long double>(rho.get_d()) / detail::ld_pow(static_cast<long double>(p), k);
    });
    const long double d = f.degree();
    const long double base = std::max<long double>(static_cast<long double>(P), 1.0L);
    const long double tail = 2 * d / ((k - 1) * detail::ld_pow(base, k - 1));
    const bool valid = detail::ld_pow(static_cast<long double>(P) + 1, k) >= 2 * d;
    return detail::finish(std::move(r), logs, tail, valid);
}

/// prod_{p <= P} (1 - 2/p^2): density of n with n and n + 1 both squarefree.
inline DensityResult twin_constant(u64 P, const DensityOptions& opts = {}) {
    if (P < 2) throw UsageError("twin_constant: P must be at least 2");
    DensityResult r;
    r.P = P;
    r.k = 2;
    r.degree = 2;
    r.label = "twin_constant";
    const auto primes = primes_up_to(P);
    const auto logs = detail::log_product(primes, opts, [](u64 p) {
        long double pl = static_cast<long double>(p);
        return 2.0L / (pl * pl);
    });
    return detail::finish(std::move(r), logs, 4.0L / static_cast<long double>(P), true);
}

/// prod_{p = 1 mod 4, p <= P} (1 - 2/p^2): density of n with n^2 + 1 squarefree.
/// The tail runs only over m = 1 mod 4:
///     sum_{m = 1 (4), m > P} 4/m^2 <= 1/(m0 - 4),  m0 the least such m > P.
inline DensityResult estermann_constant(u64 P, const DensityOptions& opts = {}) {
    if (P < 5) throw UsageError("estermann_constant: P must be at least 5");
    DensityResult r;
    r.P = P;
    r.k = 2;
    r.degree = 2;
    r.label = "estermann_constant";
    std::vector<u64> primes;
    for (u64 p : primes_up_to(P))
        if (p % 4 == 1) primes.push_back(p);
    const auto logs = detail::log_product(primes, opts, [](u64 p) {
        long double pl = static_cast<long double>(p);
        return 2.0L / (pl * pl);
    });
    u64 m0 = P + 1;
    while (m0 % 4 != 1) ++m0;
    return detail::finish(std::move(r), logs, 1.0L / static_cast<long double>(m0 - 4), true);
}

/// Legendre symbol (a | p) for odd prime p, by Euler's criterion.
inline int legendre(i64 a, u64 p) {
    if (p == 2 || !is_prime_u64(p)) throw UsageError("legendre: p must be an odd prime");
    u64 r = static_cast<u64>(((a % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p));
    if (r == 0) return 0;
    u64 e = powmod(r, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

/// prod_{2 < p <= P} (1 - ((-1|p) + (-2|p) + 2)/p^2): density of n with
/// (n^2 + 1)(n^2 + 2) squarefree. Numerators are at most 4, so the tail is
/// sum_{m > P} 8/m^2 <= 8/P.
inline DensityResult bb_constant(u64 P, const DensityOptions& opts = {}) {
    if (P < 3) throw UsageError("bb_constant: P must be at least 3");
    DensityResult r;
    r.P = P;
    r.k = 2;
    r.degree = 4;
    r.label = "bb_constant";
    std::vector<u64> primes;
    for (u64 p : primes_up_to(P))
        if (p > 2) primes.push_back(p);
    const auto logs = detail::log_product(primes, opts, [](u64 p) {
        long double pl = static_cast<long double>(p);
        int num = legendre(-1, p) + legendre(-2, p) + 2;
        return static_cast<long double>(num) / (pl * pl);
    });
    return detail::finish(std::move(r), logs, 8.0L / static_cast<long double>(P), true);
}

}  // namespace pfv
