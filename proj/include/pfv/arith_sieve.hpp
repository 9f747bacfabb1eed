#pragma once

// Segmented sieves for Omega(n) (prime factors with multiplicity), the
// Moebius function, the Liouville function and squarefree masks.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "pfv/bitset.hpp"
#include "pfv/error.hpp"
#include "pfv/numeric.hpp"
#include "pfv/parallel.hpp"

namespace pfv {

/// Largest bound accepted by primes_up_to.
inline constexpr u64 max_prime_list_bound = u64{1} << 32;

/// Ascending primes <= limit (segmented odd-only Eratosthenes).
inline std::vector<u64> primes_up_to(u64 limit) {
    if (limit > max_prime_list_bound)
        throw CapacityError("primes_up_to: bound " + std::to_string(limit) + " exceeds capacity " +
                            std::to_string(max_prime_list_bound));
    std::vector<u64> primes;
    if (limit < 2) return primes;
    primes.push_back(2);
    if (limit < 3) return primes;

    u64 root = isqrt_u64(limit);
    std::vector<char> small(root + 1, 1);
    std::vector<u64> base;
    for (u64 i = 3; i <= root; i += 2) {
        if (!small[i]) continue;
        base.push_back(i);
        for (u64 j = i * i; j <= root; j += 2 * i) small[j] = 0;
    }

    // Segment over odd numbers: index i represents lo + 2i.
    constexpr u64 seg_odds = u64{1} << 18;
    std::vector<char> seg(seg_odds);
    for (u64 lo = 3; lo <= limit; lo += 2 * seg_odds) {
        u64 hi = std::min<u64>(limit, lo + 2 * seg_odds - 2);
        u64 count = (hi - lo) / 2 + 1;
        std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(count), 1);
        for (u64 p : base) {
            u64 sq = p * p;
            if (sq > hi) break;
            u64 start = sq >= lo ? sq : ((lo + p - 1) / p) * p;
            if ((start & 1) == 0) start += p;
            for (u64 j = start; j <= hi; j += 2 * p) seg[(j - lo) / 2] = 0;
        }
        for (u64 i = 0; i < count; ++i)
            if (seg[i]) primes.push_back(lo + 2 * i);
    }
    return primes;
}

struct SieveOptions {
    u64 max_hi = u64{1} << 40;
    ExecPolicy exec{};
};

namespace detail {

/// Omega and Moebius over [lo, lo + len); `primes` must cover sqrt(lo + len - 1).
/// Omega is accumulated per prime power hit; the product of the found prime
/// powers identifies the single remaining large prime factor, if any.
inline void sieve_segment(u64 lo, std::size_t len, const std::vector<u64>& primes, std::uint8_t* omega,
                          std::int8_t* mobius, std::vector<u64>& found) {
    const u64 hi = lo + len;  // exclusive
    found.assign(len, 1);
    std::fill(omega, omega + len, std::uint8_t{0});
    if (mobius) std::fill(mobius, mobius + len, std::int8_t{1});
    for (u64 p : primes) {
        if (p * p > hi - 1) break;
        u64 pe = p;
        for (int e = 1;; ++e) {
            u64 start = ((lo + pe - 1) / pe) * pe;
            for (u64 m = start; m < hi; m += pe) {
                std::size_t i = m - lo;
                ++omega[i];
                found[i] *= p;
                if (mobius) {
                    if (e == 1) mobius[i] = static_cast<std::int8_t>(-mobius[i]);
                    else if (e == 2) mobius[i] = 0;
                }
            }
            if (pe > (hi - 1) / p) break;
            pe *= p;
        }
    }
    for (std::size_t i = 0; i < len; ++i) {
        if (found[i] != lo + i) {
            ++omega[i];
            if (mobius) mobius[i] = static_cast<std::int8_t>(-mobius[i]);
        }
    }
}

}  // namespace detail

/// Omega, Moebius and squarefree data for the half-open range [lo, hi).
/// Immutable after construction.
class ArithTables {
public:
    ArithTables() = default;

    u64 lo() const noexcept { return lo_; }
    u64 hi() const noexcept { return hi_; }
    bool contains(u64 n) const noexcept { return n >= lo_ && n < hi_; }

    int omega(u64 n) const { return omega_[index(n)]; }
    int mobius(u64 n) const { return mobius_[index(n)]; }
    bool is_squarefree(u64 n) const { return squarefree_.test(index(n)); }
    int liouville(u64 n) const { return (omega(n) & 1) ? -1 : 1; }

    const std::vector<std::uint8_t>& omega_values() const noexcept { return omega_; }
    const std::vector<std::int8_t>& mobius_values() const noexcept { return mobius_; }
    /// Bit i corresponds to n = lo + i.
    const Bitset& squarefree_mask() const noexcept { return squarefree_; }

    friend ArithTables build_tables(u64 lo, u64 hi, const SieveOptions& opts);

private:
    std::size_t index(u64 n) const {
        if (!contains(n))
            throw DomainError("n = " + std::to_string(n) + " outside sieved range [" + std::to_string(lo_) + ", " +
                              std::to_string(hi_) + ")");
        return static_cast<std::size_t>(n - lo_);
    }

    u64 lo_ = 1, hi_ = 1;
    std::vector<std::uint8_t> omega_;
    std::vector<std::int8_t> mobius_;
    Bitset squarefree_;
};

inline ArithTables build_tables(u64 lo, u64 hi, const SieveOptions& opts = {}) {
    if (lo < 1) throw UsageError("build_tables: lo must be >= 1");
    if (hi <= lo) throw UsageError("build_tables: empty range");
    if (hi > opts.max_hi)
        throw CapacityError("build_tables: hi = " + std::to_string(hi) + " exceeds configured maximum " +
                            std::to_string(opts.max_hi));
    ArithTables t;
    t.lo_ = lo;
    t.hi_ = hi;
    const std::size_t len = static_cast<std::size_t>(hi - lo);
    t.omega_.resize(len);
    t.mobius_.resize(len);
    const auto primes = primes_up_to(isqrt_u64(hi - 1));
    const std::size_t seg = std::max<std::size_t>(opts.exec.segment, 64);
    const std::size_t nseg = (len + seg - 1) / seg;
    parallel_for(nseg, opts.exec.threads, [&](std::size_t s) {
        std::vector<u64> scratch;
        std::size_t off = s * seg;
        std::size_t n = std::min(seg, len - off);
        detail::sieve_segment(lo + off, n, primes, t.omega_.data() + off, t.mobius_.data() + off, scratch);
    });
    t.squarefree_ = Bitset(len);
    for (std::size_t i = 0; i < len; ++i)
        if (t.mobius_[i] != 0) t.squarefree_.set(i);
    return t;
}

inline int liouville(const ArithTables& tables, u64 n) { return tables.liouville(n); }

}  // namespace pfv
