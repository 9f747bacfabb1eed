#pragma once

// Exact k-freeness of polynomial values f(1), ..., f(N).
//
// Method, per factor g of f = g_1 * ... * g_r (r = 1 for an unfactored f):
//   P0 = ceil(B^(1/(k+1))) with B >= max_{n <= N} |g(n)|.
//   For every prime p <= P0 and every root nu of g mod p, divide p out of
//   |g(n)| at n = nu (mod p), flagging n once the exponent reaches k.
//   The cofactor then has only prime factors > P0; since q^k * q' > P0^(k+1)
//   >= |g(n)|, it has a k-th power divisor iff it is itself a perfect k-th
//   power > 1.
// Primes dividing a pairwise resultant Res(g_i, g_j) can divide two factors
// at once; they are divided out of every factor and their exponents summed.
// Any other prime divides at most one factor value, so the per-factor test
// decides k-freeness of the product.

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "pfv/arith_sieve.hpp"
#include "pfv/bitset.hpp"
#include "pfv/euler_density.hpp"
#include "pfv/error.hpp"
#include "pfv/factorize.hpp"
#include "pfv/local_roots.hpp"
#include "pfv/numeric.hpp"
#include "pfv/parallel.hpp"
#include "pfv/polynomial.hpp"

namespace pfv {

struct KfreeOptions {
    ExecPolicy exec{1, std::size_t{1} << 16};
    RootOptions roots{};
    /// Largest sieving prime P0 accepted before a capacity error.
    u64 max_sieve_prime = 100'000'000;
    /// Limits for the exact per-n diagnostics.
    u64 decompose_cap = 1'000'000;
    u64 tail_cap = 100'000;
};

/// Bit n-1 is set iff |f(n)| is k-free.
struct KfreeMask {
    u64 N = 0;
    unsigned k = 2;
    std::vector<IntPolynomial> factors;
    IntPolynomial f;  ///< product of the factors
    Bitset bits;
    std::vector<u64> zero_policy_hits;  ///< n with f(n) = 0, never k-free
    u64 sieve_bound = 0;                ///< largest P0 over the factors

    bool is_kfree(u64 n) const {
        if (n < 1 || n > N) throw DomainError("n = " + std::to_string(n) + " outside [1, " + std::to_string(N) + "]");
        return bits.test(n - 1);
    }
    u64 count(u64 upto) const { return bits.count_prefix(std::min(upto, N)); }
    u64 count() const { return bits.count(); }
};

namespace detail {

/// Roots of one factor at each sieving prime that has any.
struct RootPlan {
    std::vector<u64> primes;
    std::vector<std::uint32_t> offsets{0};
    std::vector<u64> roots;
};

template <class V>
struct ValueOps;

template <>
struct ValueOps<u64> {
    static u64 from_i128(i128 v) { return static_cast<u64>(v < 0 ? -v : v); }
    static bool is_zero(u64 v) { return v == 0; }
    static unsigned divide_out(u64& v, u64 p) {
        unsigned e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        return e;
    }
    static bool kth_power_above_one(u64 v, unsigned k) { return v > 1 && is_perfect_power(static_cast<u128>(v), k); }
};

template <>
struct ValueOps<u128> {
    static u128 from_i128(i128 v) { return static_cast<u128>(v < 0 ? -v : v); }
    static bool is_zero(u128 v) { return v == 0; }
    static unsigned divide_out(u128& v, u64 p) {
        unsigned e = 0;
        while ((v >> 64) != 0) {
            if (v % p != 0) return e;
            v /= p;
            ++e;
        }
        u64 w = static_cast<u64>(v);
        e += ValueOps<u64>::divide_out(w, p);
        v = w;
        return e;
    }
    static bool kth_power_above_one(u128 v, unsigned k) { return v > 1 && is_perfect_power(v, k); }
};

template <>
struct ValueOps<BigInt> {
    static bool is_zero(const BigInt& v) { return v == 0; }
    static unsigned divide_out(BigInt& v, u64 p) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(v.get_mpz_t(), p) != 0) {
            mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
            ++e;
        }
        return e;
    }
    static bool kth_power_above_one(const BigInt& v, unsigned k) { return v > 1 && is_perfect_power(v, k); }
};

enum class Storage { word, dword, big };

/// Sieve state for one factor.
struct FactorPlan {
    IntPolynomial g;
    Storage storage = Storage::word;
    std::vector<i128> coeffs128;
    u64 P0 = 1;
    RootPlan plan;                                ///< primes <= P0 outside the cross set
    std::vector<std::vector<u64>> cross_roots;   ///< roots at each cross prime
};

inline u64 first_hit(u64 lo, u64 nu, u64 p) { return lo + (nu + p - lo % p) % p; }

struct SegmentScratch {
    std::vector<std::uint8_t> bad;
    std::vector<std::uint8_t> cross_exp;  ///< [cross prime][offset]
};

template <class V>
void sieve_factor(const FactorPlan& fp, u64 lo, std::size_t len, unsigned k, const std::vector<u64>& cross,
                  SegmentScratch& s, std::vector<u64>& zeros) {
    using Ops = ValueOps<V>;
    std::vector<V> vals(len);
    for (std::size_t i = 0; i < len; ++i) {
        const u64 n = lo + i;
        if constexpr (std::is_same_v<V, BigInt>) {
            vals[i] = abs(fp.g.eval(to_big(n)));
        } else {
            i128 acc = 0;
            for (std::size_t c = fp.coeffs128.size(); c-- > 0;) acc = acc * static_cast<i128>(n) + fp.coeffs128[c];
            vals[i] = Ops::from_i128(acc);
        }
        if (Ops::is_zero(vals[i])) {
            s.bad[i] = 1;
            zeros.push_back(n);
        }
    }
    auto hit = [&](std::size_t i, u64 p) -> unsigned {
        unsigned e = Ops::divide_out(vals[i], p);
        if (e == 0)
            throw InternalError("kfree sieve: sieved root position n = " + std::to_string(lo + i) +
                                " is not divisible by p = " + std::to_string(p));
        return e;
    };
    const u64 hi = lo + len;
    for (std::size_t c = 0; c < cross.size(); ++c) {
        const u64 p = cross[c];
        std::uint8_t* exps = s.cross_exp.data() + c * len;
        for (u64 nu : fp.cross_roots[c]) {
            for (u64 n = first_hit(lo, nu, p); n < hi; n += p) {
                std::size_t i = n - lo;
                if (s.bad[i]) continue;
                unsigned e = hit(i, p);
                exps[i] = static_cast<std::uint8_t>(std::min<unsigned>(255, exps[i] + e));
            }
        }
    }
    const auto& pl = fp.plan;
    for (std::size_t j = 0; j < pl.primes.size(); ++j) {
        const u64 p = pl.primes[j];
        for (std::uint32_t r = pl.offsets[j]; r < pl.offsets[j + 1]; ++r) {
            for (u64 n = first_hit(lo, pl.roots[r], p); n < hi; n += p) {
                std::size_t i = n - lo;
                if (s.bad[i]) continue;
                if (hit(i, p) >= k) s.bad[i] = 1;
            }
        }
    }
    for (std::size_t i = 0; i < len; ++i)
        if (!s.bad[i] && Ops::kth_power_above_one(vals[i], k)) s.bad[i] = 1;
}

inline RootPlan build_root_plan(const IntPolynomial& g, const std::vector<u64>& primes, u64 P0,
                                const std::set<u64>& skip, const KfreeOptions& opts) {
    const std::size_t limit = static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), P0) - primes.begin());
    constexpr std::size_t chunk = 4096;
    const std::size_t nchunks = (limit + chunk - 1) / chunk;
    std::vector<RootPlan> parts(nchunks);
    parallel_for(nchunks, opts.exec.threads, [&](std::size_t c) {
        RootPlan& part = parts[c];
        std::size_t end = std::min(limit, (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < end; ++i) {
            u64 p = primes[i];
            if (skip.count(p)) continue;
            auto roots = roots_mod_p(g, p, opts.roots);
            if (roots.empty()) continue;
            part.primes.push_back(p);
            part.roots.insert(part.roots.end(), roots.begin(), roots.end());
            part.offsets.push_back(static_cast<std::uint32_t>(part.roots.size()));
        }
    });
    RootPlan plan;
    for (auto& part : parts) {
        const std::uint32_t base = static_cast<std::uint32_t>(plan.roots.size());
        plan.primes.insert(plan.primes.end(), part.primes.begin(), part.primes.end());
        plan.roots.insert(plan.roots.end(), part.roots.begin(), part.roots.end());
        for (std::size_t i = 1; i < part.offsets.size(); ++i) plan.offsets.push_back(base + part.offsets[i]);
    }
    return plan;
}

inline void check_hypotheses(const IntPolynomial& f, unsigned k) {
    if (auto p = fixed_kth_power_prime(f, k))
        throw HypothesisError("f has a fixed k-th power divisor: " + p->get_str() + "^" + std::to_string(k) +
                              " divides every value (no fixed k-th power divisor required)");
    if (f.degree() >= 1 && resultant_f_fprime(f) == 0)
        throw HypothesisError("f has a repeated factor (Res(f, f') = 0); a squarefree polynomial is required");
}

/// Primes that can divide two factor values at the same n.
inline std::vector<u64> cross_primes(const std::vector<IntPolynomial>& factors) {
    std::set<u64> out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        for (std::size_t j = i + 1; j < factors.size(); ++j) {
            BigInt r = resultant(factors[i], factors[j]);
            if (r == 0) throw HypothesisError("factors share a common factor; a squarefree polynomial is required");
            if (abs(r) == 1) continue;
            for (const auto& pf : factorize(r)) {
                if (!fits_u64(pf.p) || pf.p >= (BigInt(1) << 62))
                    throw CapacityError("cross prime " + pf.p.get_str() + " exceeds 62 bits");
                out.insert(to_u64(pf.p));
            }
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace detail

/// Exact k-freeness mask of f = product of `factors` over n in [1, N].
inline KfreeMask kfree_mask(const std::vector<IntPolynomial>& factors, unsigned k, u64 N,
                            const KfreeOptions& opts = {}) {
    if (k < 2) throw UsageError("kfree_mask: k must be at least 2");
    if (factors.empty()) throw UsageError("kfree_mask: no polynomial given");
    KfreeMask mask;
    mask.N = N;
    mask.k = k;
    mask.factors = factors;
    mask.f = product(factors);
    detail::check_hypotheses(mask.f, k);
    mask.bits = Bitset(N);
    if (N == 0) return mask;

    const std::vector<u64> cross = factors.size() > 1 ? detail::cross_primes(factors) : std::vector<u64>{};
    const std::set<u64> cross_set(cross.begin(), cross.end());

    std::vector<detail::FactorPlan> plans;
    u64 max_p0 = 1;
    for (const auto& g : factors) {
        detail::FactorPlan fp;
        fp.g = g;
        BigInt bound = g.value_bound(N);
        BigInt p0 = ceil_root(bound, k + 1);
        if (p0 > to_big(opts.max_sieve_prime))
            throw CapacityError("kfree_mask: sieving bound P0 = " + p0.get_str() + " exceeds capacity " +
                                std::to_string(opts.max_sieve_prime) + " (reduce N or supply f as a product of factors)");
        fp.P0 = to_u64(p0);
        max_p0 = std::max(max_p0, fp.P0);
        if (bit_length(bound) <= 64) fp.storage = detail::Storage::word;
        else if (bit_length(bound) <= 125) fp.storage = detail::Storage::dword;
        else fp.storage = detail::Storage::big;
        if (fp.storage != detail::Storage::big)
            for (const auto& c : g.coeffs()) fp.coeffs128.push_back(to_i128(c));
        plans.push_back(std::move(fp));
    }
    mask.sieve_bound = max_p0;
    const auto primes = primes_up_to(max_p0);
    for (auto& fp : plans) {
        fp.plan = detail::build_root_plan(fp.g, primes, fp.P0, cross_set, opts);
        for (u64 p : cross) {
            if (fp.g.value_bound(N) < to_big(p)) fp.cross_roots.emplace_back();
            else fp.cross_roots.push_back(roots_mod_p(fp.g, p, opts.roots));
        }
    }

    std::size_t seg = std::max<std::size_t>(64, opts.exec.segment / 64 * 64);
    const std::size_t nseg = static_cast<std::size_t>((N + seg - 1) / seg);
    std::vector<std::vector<u64>> zeros(nseg);
    parallel_for(nseg, opts.exec.threads, [&](std::size_t sidx) {
        const u64 lo = 1 + static_cast<u64>(sidx) * seg;
        const std::size_t len = static_cast<std::size_t>(std::min<u64>(seg, N - (lo - 1)));
        detail::SegmentScratch s;
        s.bad.assign(len, 0);
        s.cross_exp.assign(cross.size() * len, 0);
        std::vector<u64>& z = zeros[sidx];
        for (const auto& fp : plans) {
            switch (fp.storage) {
                case detail::Storage::word: detail::sieve_factor<u64>(fp, lo, len, k, cross, s, z); break;
                case detail::Storage::dword: detail::sieve_factor<u128>(fp, lo, len, k, cross, s, z); break;
                case detail::Storage::big: detail::sieve_factor<BigInt>(fp, lo, len, k, cross, s, z); break;
            }
        }
        for (std::size_t c = 0; c < cross.size(); ++c)
            for (std::size_t i = 0; i < len; ++i)
                if (s.cross_exp[c * len + i] >= k) s.bad[i] = 1;
        for (std::size_t i = 0; i < len; ++i)
            if (!s.bad[i]) mask.bits.set(lo - 1 + i);
        std::sort(z.begin(), z.end());
        z.erase(std::unique(z.begin(), z.end()), z.end());
    });
    for (auto& z : zeros) mask.zero_policy_hits.insert(mask.zero_policy_hits.end(), z.begin(), z.end());
    return mask;
}

inline KfreeMask kfree_mask(const IntPolynomial& f, unsigned k, u64 N, const KfreeOptions& opts = {}) {
    return kfree_mask(std::vector<IntPolynomial>{f}, k, N, opts);
}

/// Bit n-1 set iff n and n + 1 are both squarefree, for n in [1, N].
inline Bitset twin_squarefree_mask(u64 N, const ExecPolicy& exec = {}) {
    Bitset out(N);
    if (N == 0) return out;
    SieveOptions so;
    so.exec = exec;
    const ArithTables t = build_tables(1, N + 2, so);
    const Bitset& sf = t.squarefree_mask();  // bit i <-> n = i + 1
    for (u64 i = 0; i < N; ++i)
        if (sf.test(i) && sf.test(i + 1)) out.set(i);
    return out;
}

struct CountRow {
    u64 N = 0;
    u64 count = 0;
    long double target = 0;  ///< density * N
    long double abs_error = 0;
    long double rel_error = 0;
};

inline std::vector<CountRow> count_rows(const Bitset& mask, long double density_value,
                                        std::span<const u64> checkpoints) {
    std::vector<CountRow> rows;
    u64 prev = 0;
    for (u64 Ni : checkpoints) {
        if (Ni < prev) throw UsageError("checkpoints must be ascending");
        if (Ni > mask.size()) throw UsageError("checkpoint " + std::to_string(Ni) + " exceeds N");
        prev = Ni;
        CountRow r;
        r.N = Ni;
        r.count = mask.count_prefix(Ni);
        r.target = density_value * static_cast<long double>(Ni);
        r.abs_error = std::fabs(static_cast<long double>(r.count) - r.target);
        r.rel_error = r.target > 0 ? r.abs_error / r.target : 0;
        rows.push_back(r);
    }
    return rows;
}

struct CountReport {
    std::vector<CountRow> rows;
    DensityResult density;
};

/// Exact k-free counts at each checkpoint paired with density * N_i.
inline CountReport count_kfree(const std::vector<IntPolynomial>& factors, unsigned k, u64 N,
                               std::span<const u64> checkpoints, u64 P, const KfreeOptions& opts = {}) {
    for (u64 c : checkpoints)
        if (c > N) throw UsageError("checkpoint " + std::to_string(c) + " exceeds N = " + std::to_string(N));
    CountReport rep;
    DensityOptions dop;
    dop.exec = opts.exec;
    dop.roots = opts.roots;
    rep.density = density(product(factors), k, P, dop);
    const KfreeMask mask = kfree_mask(factors, k, N, opts);
    rep.rows = count_rows(mask.bits, rep.density.value, checkpoints);
    return rep;
}

// ---------------------------------------------------------------------------
// Exact per-n diagnostics

/// For every n in [1, N] whose value has one, the primes p with p^k | f(n).
struct KthPowerPrimeSets {
    u64 N = 0;
    unsigned k = 2;
    BigInt max_abs_value = 0;
    std::vector<std::pair<u64, std::vector<BigInt>>> sets;  ///< ascending n, nonempty sets only
};

inline KthPowerPrimeSets kth_power_prime_sets(const std::vector<IntPolynomial>& factors, unsigned k, u64 N, u64 cap) {
    if (N > cap)
        throw CapacityError("N = " + std::to_string(N) + " exceeds the diagnostic cap " + std::to_string(cap));
    KthPowerPrimeSets out;
    out.N = N;
    out.k = k;
    for (u64 n = 1; n <= N; ++n) {
        std::vector<PrimeFactor> merged;
        BigInt value = 1;
        for (const auto& g : factors) {
            BigInt v = g.eval(to_big(n));
            value *= v;
            if (v == 0) break;
            if (abs(v) == 1) continue;
            std::vector<PrimeFactor> fs;
            try {
                fs = factorize(v);
            } catch (const InternalError& e) {
                throw InternalError("factorization failed at n = " + std::to_string(n) + ": " + e.what());
            }
            merged.insert(merged.end(), fs.begin(), fs.end());
        }
        if (value == 0)
            throw HypothesisError("f(" + std::to_string(n) + ") = 0: every d^k divides it");
        out.max_abs_value = std::max(out.max_abs_value, BigInt(abs(value)));
        std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
        std::vector<BigInt> S;
        for (std::size_t i = 0; i < merged.size();) {
            std::size_t j = i;
            unsigned e = 0;
            while (j < merged.size() && merged[j].p == merged[i].p) e += merged[j++].e;
            if (e >= k) S.push_back(merged[i].p);
            i = j;
        }
        if (!S.empty()) out.sets.emplace_back(n, std::move(S));
    }
    return out;
}

struct Decomposition {
    BigInt S1 = 0;     ///< sum over squarefree d <= Y of mu(d) sum_{d^k | f(n)} a(n)
    BigInt S2 = 0;     ///< the same over d > Y
    BigInt total = 0;  ///< sum of a(n) over n with f(n) k-free, from the sieve mask
};

/// Splits sum_{n <= N} [f(n) k-free] a(n) at d = Y via the Moebius identity
/// [m k-free] = sum_{d^k | m} mu(d). The squarefree d with d^k | f(n) are
/// exactly the products of subsets of {p : p^k | f(n)}.
inline Decomposition decompose_sum(const KthPowerPrimeSets& sets, const KfreeMask& mask, u64 Y,
                                   std::span<const i64> a) {
    if (Y < 1) throw UsageError("decompose_sum: Y must be at least 1");
    if (mask.N != sets.N || mask.k != sets.k) throw UsageError("decompose_sum: mask and prime sets disagree");
    if (a.size() < sets.N) throw UsageError("decompose_sum: sequence shorter than N");
    if (to_big(Y) > floor_root(sets.max_abs_value, sets.k))
        throw UsageError("decompose_sum: Y exceeds max |f(n)|^(1/k)");
    Decomposition out;
    const BigInt Yb = to_big(Y);
    // Every n contributes a(n) through d = 1.
    for (u64 n = 1; n <= sets.N; ++n) out.S1 += static_cast<long>(a[n - 1]);
    for (const auto& [n, S] : sets.sets) {
        const long an = static_cast<long>(a[n - 1]);
        const std::size_t s = S.size();
        for (u64 m = 1; m < (u64{1} << s); ++m) {
            BigInt d = 1;
            for (std::size_t b = 0; b < s; ++b)
                if (m >> b & 1) d *= S[b];
            const long sign = (std::popcount(m) & 1) ? -1 : 1;
            if (d <= Yb) out.S1 += sign * an;
            else out.S2 += sign * an;
        }
    }
    for (u64 n = 1; n <= mask.N; ++n)
        if (mask.bits.test(n - 1)) out.total += static_cast<long>(a[n - 1]);
    return out;
}

inline Decomposition decompose_sum(const std::vector<IntPolynomial>& factors, unsigned k, u64 Y, u64 N,
                                   std::span<const i64> a, const KfreeOptions& opts = {}) {
    const auto sets = kth_power_prime_sets(factors, k, N, opts.decompose_cap);
    const auto mask = kfree_mask(factors, k, N, opts);
    return decompose_sum(sets, mask, Y, a);
}

struct TailCount {
    u64 Y = 0;
    u64 N = 0;
    BigInt value = 0;
};

/// E_f(Y, N) = #{(d, n) : d squarefree, d > Y, d^k | f(n), n <= N}.
inline TailCount e_f_tail(const KthPowerPrimeSets& sets, u64 Y) {
    if (Y < 1) throw UsageError("e_f_tail: Y must be at least 1");
    TailCount t;
    t.Y = Y;
    t.N = sets.N;
    const BigInt Yb = to_big(Y);
    for (const auto& [n, S] : sets.sets) {
        (void)n;
        const std::size_t s = S.size();
        for (u64 m = 1; m < (u64{1} << s); ++m) {
            BigInt d = 1;
            for (std::size_t b = 0; b < s; ++b)
                if (m >> b & 1) d *= S[b];
            if (d > Yb) t.value += 1;
        }
    }
    return t;
}

inline TailCount e_f_tail(const std::vector<IntPolynomial>& factors, unsigned k, u64 Y, u64 N,
                          const KfreeOptions& opts = {}) {
    return e_f_tail(kth_power_prime_sets(factors, k, N, opts.tail_cap), Y);
}

}  // namespace pfv
