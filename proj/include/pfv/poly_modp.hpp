#pragma once

// Dense univariate polynomials over the prime field F_p (p < 2^63),
// coefficients ascending. Degrees here are tiny, so schoolbook
// arithmetic is used throughout.

#include <cstdint>
#include <utility>
#include <vector>

#include "pfv/error.hpp"
#include "pfv/numeric.hpp"

namespace pfv::modp {

using Poly = std::vector<u64>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Degree, -1 for the zero polynomial.
inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly make_monic(Poly a, u64 p) {
    trim(a);
    if (a.empty()) return a;
    u64 inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
    return a;
}

inline Poly sub(Poly a, const Poly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = submod(a[i], b[i], p);
    trim(a);
    return a;
}

inline Poly mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
    }
    trim(r);
    return r;
}

/// Quotient and remainder of a by nonzero b.
inline std::pair<Poly, Poly> divmod(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    if (b.empty()) throw InternalError("modp::divmod: division by zero polynomial");
    if (a.size() < b.size()) return {Poly{}, a};
    u64 inv = invmod(b.back(), p);
    Poly q(a.size() - b.size() + 1, 0);
    for (std::size_t i = a.size(); i-- >= b.size();) {
        u64 c = mulmod(a[i], inv, p);
        std::size_t shift = i - (b.size() - 1);
        q[shift] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = submod(a[shift + j], mulmod(c, b[j], p), p);
    }
    trim(q);
    trim(a);
    return {q, a};
}

inline Poly rem(const Poly& a, const Poly& b, u64 p) { return divmod(a, b, p).second; }

inline Poly gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(std::move(a), p);
}

/// base^e mod m by square-and-multiply.
inline Poly powmod(Poly base, u64 e, const Poly& m, u64 p) {
    Poly result{1 % p};
    trim(result);
    base = rem(base, m, p);
    while (e != 0) {
        if (e & 1) result = rem(mul(result, base, p), m, p);
        e >>= 1;
        if (e != 0) base = rem(mul(base, base, p), m, p);
    }
    if (degree(m) == 0) return {};
    return result;
}

/// x^e mod m.
inline Poly pow_x(u64 e, const Poly& m, u64 p) { return powmod(Poly{0, 1 % p}, e, m, p); }

inline u64 eval(const Poly& a, u64 x, u64 p) {
    u64 acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = addmod(mulmod(acc, x, p), a[i], p);
    return acc;
}

/// gcd(x^p - x, f): the product of the distinct linear factors of f over F_p.
/// f must be nonzero.
inline Poly linear_part(const Poly& f, u64 p) {
    Poly m = make_monic(f, p);
    if (degree(m) <= 0) return Poly{1};
    Poly xp = pow_x(p, m, p);
    Poly diff = sub(xp, Poly{0, 1 % p}, p);
    return gcd(m, diff, p);
}

/// Roots of g, a monic product of distinct linear factors, for odd p.
/// Splitting by gcd((x + a)^((p-1)/2) - 1, g) with a = 0, 1, 2, ...
inline void split_linear(const Poly& g, u64 p, std::vector<u64>& roots, u64& shift) {
    int d = degree(g);
    if (d <= 0) return;
    if (d == 1) {
        roots.push_back(submod(0, mulmod(g[0], invmod(g[1], p), p), p));
        return;
    }
    for (int attempts = 0; attempts < 512; ++attempts, ++shift) {
        Poly base{shift % p, 1};
        Poly h = powmod(base, (p - 1) / 2, g, p);
        h = sub(h, Poly{1}, p);
        Poly fac = gcd(g, h, p);
        int fd = degree(fac);
        if (fd > 0 && fd < d) {
            ++shift;
            split_linear(fac, p, roots, shift);
            split_linear(divmod(g, fac, p).first, p, roots, shift);
            return;
        }
    }
    throw InternalError("modp::split_linear: no splitting element found for p = " + std::to_string(p));
}

}  // namespace pfv::modp
