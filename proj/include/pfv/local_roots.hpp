#pragma once

// Roots and root counts of f modulo p and p^k (the local densities rho_f(q)).
// Good primes (p not dividing Res(f, f') * lc(f)) have only simple roots and
// lift uniquely; bad primes are handled by exhaustive branching lifts.

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <map>
#include <utility>
#include <vector>

#include "pfv/error.hpp"
#include "pfv/factorize.hpp"
#include "pfv/numeric.hpp"
#include "pfv/poly_modp.hpp"
#include "pfv/polynomial.hpp"

namespace pfv {

struct RootOptions {
    /// Primes below this are handled by scanning every residue.
    u64 scan_threshold = 1024;
    /// Root lists longer than this are elided; only the count is kept.
    std::size_t rho_cap = 1'000'000;
};

struct LocalRootData {
    u64 p = 0;
    unsigned k = 1;
    BigInt modulus = 1;         ///< p^k
    std::vector<BigInt> roots;  ///< ascending residues in [0, p^k); empty when elided
    BigInt rho = 0;             ///< number of roots
    bool is_bad = false;
    bool roots_elided = false;
};

namespace detail {

inline void require_prime(u64 p) {
    if (!is_prime_u64(p)) throw UsageError("p = " + std::to_string(p) + " is not prime");
}

inline void certify_root(const IntPolynomial& f, const BigInt& nu, const BigInt& modulus) {
    BigInt v = f.eval(nu);
    if (mpz_divisible_p(v.get_mpz_t(), modulus.get_mpz_t()) == 0)
        throw InternalError("root certification failed: f(" + nu.get_str() + ") not divisible by " + modulus.get_str());
}

}  // namespace detail

/// All nu in [0, p) with f(nu) = 0 mod p, ascending; each root is re-verified
/// by exact evaluation.
inline std::vector<u64> roots_mod_p(const IntPolynomial& f, u64 p, const RootOptions& opts = {}) {
    detail::require_prime(p);
    modp::Poly fp = f.mod(p);
    std::vector<u64> roots;
    if (fp.empty()) {
        if (p > opts.rho_cap)
            throw CapacityError("f vanishes identically mod " + std::to_string(p) + "; root list exceeds cap");
        roots.resize(p);
        for (u64 i = 0; i < p; ++i) roots[i] = i;
        return roots;
    }
    if (p < opts.scan_threshold || p == 2) {
        for (u64 x = 0; x < p; ++x)
            if (modp::eval(fp, x, p) == 0) roots.push_back(x);
    } else if (modp::degree(fp) >= 1) {
        modp::Poly g = modp::linear_part(fp, p);
        u64 shift = 0;
        modp::split_linear(g, p, roots, shift);
        std::sort(roots.begin(), roots.end());
        if (static_cast<int>(roots.size()) != modp::degree(g))
            throw InternalError("roots_mod_p: splitting lost roots for p = " + std::to_string(p));
    }
    const BigInt pb = to_big(p);
    for (u64 r : roots) detail::certify_root(f, to_big(r), pb);
    return roots;
}

/// Number of distinct roots in F_p, as deg gcd(x^p - x, f mod p).
inline u64 count_roots_mod_p(const IntPolynomial& f, u64 p, const RootOptions& opts = {}) {
    detail::require_prime(p);
    modp::Poly fp = f.mod(p);
    if (fp.empty()) return p;
    if (mod_u64(f.leading(), p) == 0 && p <= std::max<u64>(opts.scan_threshold, 1'000'000)) {
        u64 count = 0;
        for (u64 x = 0; x < p; ++x)
            if (modp::eval(fp, x, p) == 0) ++count;
        return count;
    }
    if (modp::degree(fp) == 0) return 0;
    return static_cast<u64>(modp::degree(modp::linear_part(fp, p)));
}

namespace detail {

/// Coefficients of f(nu + t) as a polynomial in t.
inline std::vector<BigInt> taylor_shift(const IntPolynomial& f, const BigInt& nu) {
    std::vector<BigInt> c = f.coeffs();
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;) c[j] += nu * c[j + 1];
    return c;
}

/// True when every lift nu + p^j t is a root mod p^k, certified through the
/// Taylor coefficients: v_p(T_i) + j*i >= k for all i.
inline bool whole_class_lifts(const IntPolynomial& f, const BigInt& nu, u64 p, unsigned j, unsigned k) {
    auto t = taylor_shift(f, nu);
    const BigInt pb = to_big(p);
    for (std::size_t i = 0; i < t.size(); ++i) {
        u64 need = k > j * i ? k - j * i : 0;
        if (need == 0) break;
        if (t[i] == 0) continue;
        BigInt pk = big_pow(pb, static_cast<unsigned long>(need));
        if (mpz_divisible_p(t[i].get_mpz_t(), pk.get_mpz_t()) == 0) return false;
    }
    return true;
}

}  // namespace detail

inline bool is_bad_prime(const BigInt& bad_prime_bound_data, u64 p) { return mod_u64(bad_prime_bound_data, p) == 0; }

/// Roots of f modulo p^k. Good primes lift each simple root by Newton
/// steps; bad primes branch: a root nu mod p^j extends to the nu + t p^j
/// (0 <= t < p) with p^(j+1) | f(nu + t p^j).
inline LocalRootData lift_roots(const IntPolynomial& f, u64 p, unsigned k, const BigInt& bad_prime_bound_data,
                                const RootOptions& opts = {}) {
    if (k < 1) throw UsageError("lift_roots: k must be at least 1");
    detail::require_prime(p);
    LocalRootData out;
    out.p = p;
    out.k = k;
    const BigInt pb = to_big(p);
    out.modulus = detail::big_pow(pb, k);
    out.is_bad = is_bad_prime(bad_prime_bound_data, p);
    std::vector<u64> base = roots_mod_p(f, p, opts);

    if (!out.is_bad) {
        const IntPolynomial df = f.derivative();
        for (u64 r0 : base) {
            BigInt r = to_big(r0);
            for (unsigned iter = 0; iter < 2 * k + 2; ++iter) {
                BigInt v = f.eval(r);
                if (mpz_divisible_p(v.get_mpz_t(), out.modulus.get_mpz_t()) != 0) break;
                BigInt d = df.eval(r), inv;
                if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), out.modulus.get_mpz_t()) == 0)
                    throw InternalError("lift_roots: singular root at good prime " + std::to_string(p));
                r -= v * inv;
                mpz_mod(r.get_mpz_t(), r.get_mpz_t(), out.modulus.get_mpz_t());
            }
            detail::certify_root(f, r, out.modulus);
            out.roots.push_back(r);
        }
        std::sort(out.roots.begin(), out.roots.end());
        out.rho = static_cast<unsigned long>(out.roots.size());
        return out;
    }

    // Bad prime: breadth-first branching, one p-adic digit per level.
    std::vector<BigInt> level;
    for (u64 r : base) level.push_back(to_big(r));
    BigInt pj = pb;
    BigInt count = 0;
    bool elided = false;
    auto keep = [&](const BigInt& r) {
        if (elided) return;
        if (out.roots.size() >= opts.rho_cap) {
            elided = true;
            out.roots.clear();
            return;
        }
        out.roots.push_back(r);
    };
    for (unsigned j = 1; j < k && !level.empty(); ++j) {
        std::vector<BigInt> next;
        BigInt pj1 = pj * pb;
        for (const auto& nu : level) {
            if (detail::whole_class_lifts(f, nu, p, j, k)) {
                BigInt members = detail::big_pow(pb, k - j);
                count += members;
                if (!elided && members + out.roots.size() <= opts.rho_cap) {
                    for (BigInt t = 0; t < members; ++t) keep(nu + t * pj);
                } else if (!elided) {
                    elided = true;
                    out.roots.clear();
                }
                continue;
            }
            for (u64 t = 0; t < p; ++t) {
                BigInt cand = nu + pj * static_cast<unsigned long>(t);
                BigInt v = f.eval(cand);
                if (mpz_divisible_p(v.get_mpz_t(), pj1.get_mpz_t()) != 0) next.push_back(std::move(cand));
            }
        }
        level = std::move(next);
        pj = pj1;
    }
    for (const auto& r : level) {
        count += 1;
        keep(r);
    }
    out.roots_elided = elided;
    if (!elided) {
        std::sort(out.roots.begin(), out.roots.end());
        for (const auto& r : out.roots) detail::certify_root(f, r, out.modulus);
    }
    out.rho = count;
    return out;
}

inline LocalRootData lift_roots(const IntPolynomial& f, u64 p, unsigned k, const RootOptions& opts = {}) {
    return lift_roots(f, p, k, resultant_f_fprime(f) * f.leading(), opts);
}

/// rho_f(p^k): root counting for good primes, branching lifts for bad ones.
inline BigInt rho_prime_power(const IntPolynomial& f, u64 p, unsigned k, const BigInt& bad_prime_bound_data,
                              const RootOptions& opts = {}) {
    if (!is_bad_prime(bad_prime_bound_data, p)) return static_cast<unsigned long>(count_roots_mod_p(f, p, opts));
    return lift_roots(f, p, k, bad_prime_bound_data, opts).rho;
}

/// Concurrent cache of rho_f(p^k). All writers compute identical values, so
/// a racing second insert is harmless.
class RhoTable {
public:
    explicit RhoTable(IntPolynomial f, RootOptions opts = {})
        : f_(std::move(f)), bad_(resultant_f_fprime(f_) * f_.leading()), opts_(opts) {}

    const IntPolynomial& polynomial() const noexcept { return f_; }
    const BigInt& bad_prime_bound_data() const noexcept { return bad_; }

    BigInt rho(u64 p, unsigned k) const {
        const std::pair<u64, unsigned> key{p, k};
        {
            std::shared_lock lock(mu_);
            if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        }
        BigInt value = rho_prime_power(f_, p, k, bad_, opts_);
        std::unique_lock lock(mu_);
        cache_[key] = value;
        return value;
    }

private:
    IntPolynomial f_;
    BigInt bad_;
    RootOptions opts_;
    mutable std::shared_mutex mu_;
    mutable std::map<std::pair<u64, unsigned>, BigInt> cache_;
};

/// rho_f(d^k) for squarefree d, assembled multiplicatively over p | d.
inline BigInt rho_composite(const IntPolynomial& f, u64 d, unsigned k, const BigInt& bad_prime_bound_data,
                            const RootOptions& opts = {}) {
    if (d == 0) throw UsageError("rho_composite: d must be positive");
    BigInt result = 1;
    if (d == 1) return result;
    const auto factors = factorize(to_big(d));
    for (const auto& pf : factors)
        if (pf.e > 1) throw UsageError("rho_composite: d = " + std::to_string(d) + " is not squarefree");
    for (const auto& pf : factors) {
        result *= rho_prime_power(f, to_u64(pf.p), k, bad_prime_bound_data, opts);
        if (result == 0) break;
    }
    return result;
}

inline BigInt rho_composite(const IntPolynomial& f, u64 d, unsigned k, const RootOptions& opts = {}) {
    return rho_composite(f, d, k, resultant_f_fprime(f) * f.leading(), opts);
}

}  // namespace pfv
