#pragma once

// Exact integer polynomials. Coefficients are ascending by power everywhere
// (constant term first).

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfv/arith_sieve.hpp"
#include "pfv/error.hpp"
#include "pfv/factorize.hpp"
#include "pfv/numeric.hpp"
#include "pfv/poly_modp.hpp"

namespace pfv {

class IntPolynomial {
public:
    /// The constant polynomial 1.
    IntPolynomial() : coeffs_{BigInt(1)} {}

    explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
        if (coeffs_.empty()) throw UsageError("the zero polynomial is not allowed");
    }

    IntPolynomial(std::initializer_list<long> coeffs) : IntPolynomial(std::vector<BigInt>(coeffs.begin(), coeffs.end())) {}

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
    const BigInt& leading() const noexcept { return coeffs_.back(); }

    BigInt coeff(int i) const { return i >= 0 && i <= degree() ? coeffs_[static_cast<std::size_t>(i)] : BigInt(0); }

    BigInt content() const {
        BigInt g = 0;
        for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        return g;
    }

    /// Exact value by Horner's rule.
    BigInt eval(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Sum of |c_i| N^i: bounds |f(n)| for |n| <= N, and every Horner partial sum.
    BigInt value_bound(u64 N) const {
        BigInt acc = 0, npow = 1, nb = to_big(N);
        for (const auto& c : coeffs_) {
            acc += abs(c) * npow;
            npow *= nb;
        }
        return acc;
    }

    /// Formal derivative; the derivative of a constant is rejected.
    IntPolynomial derivative() const {
        if (degree() < 1) throw UsageError("derivative of a constant polynomial");
        std::vector<BigInt> d;
        for (int i = 1; i <= degree(); ++i) d.push_back(coeffs_[static_cast<std::size_t>(i)] * i);
        return IntPolynomial(std::move(d));
    }

    /// Coefficients modulo p as an F_p polynomial (trailing zeros trimmed).
    modp::Poly mod(u64 p) const {
        modp::Poly r(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = mod_u64(coeffs_[i], p);
        modp::trim(r);
        return r;
    }

    /// Comma-separated ascending coefficients, e.g. "1,0,1".
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) s += ',';
            s += coeffs_[i].get_str();
        }
        return s;
    }

    /// Conventional notation, e.g. "x^2 + 1".
    std::string pretty() const {
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            BigInt a = abs(c);
            if (first) os << (c < 0 ? "-" : "");
            else os << (c < 0 ? " - " : " + ");
            first = false;
            if (i == 0 || a != 1) os << a.get_str();
            if (i >= 1) os << "x";
            if (i >= 2) os << "^" << i;
        }
        return os.str();
    }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntPolynomial(std::move(r));
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<BigInt> coeffs_;
};

/// Parses "c0,c1,...,cd". Degree-0 input is rejected, as is a zero leading
/// coefficient (so that printing reproduces the input).
inline IntPolynomial parse_polynomial(std::string_view text) {
    std::vector<BigInt> coeffs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string tok(text.substr(pos, comma - pos));
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        if (!tok.empty() && tok[0] == '+') tok.erase(0, 1);
        BigInt c;
        if (tok.empty() || c.set_str(tok, 10) != 0)
            throw UsageError("polynomial: invalid coefficient '" + tok + "' in \"" + std::string(text) + "\"");
        coeffs.push_back(c);
        pos = comma + 1;
    }
    if (coeffs.size() < 2) throw UsageError("polynomial: degree must be at least 1 in \"" + std::string(text) + "\"");
    if (coeffs.back() == 0) throw UsageError("polynomial: leading coefficient is zero in \"" + std::string(text) + "\"");
    return IntPolynomial(std::move(coeffs));
}

/// A polynomial given as a product of factors, written "f1*f2*...".
inline std::vector<IntPolynomial> parse_factored_polynomial(std::string_view text) {
    std::vector<IntPolynomial> factors;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t star = text.find('*', pos);
        if (star == std::string_view::npos) star = text.size();
        factors.push_back(parse_polynomial(text.substr(pos, star - pos)));
        pos = star + 1;
    }
    return factors;
}

inline std::string format_factored_polynomial(const std::vector<IntPolynomial>& factors) {
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += '*';
        s += factors[i].to_string();
    }
    return s;
}

inline IntPolynomial product(const std::vector<IntPolynomial>& factors) {
    IntPolynomial r;
    for (const auto& f : factors) r = r * f;
    return r;
}

inline BigInt eval(const IntPolynomial& f, const BigInt& n) { return f.eval(n); }

namespace detail {

using ZPoly = std::vector<BigInt>;

inline int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

inline void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline BigInt zcontent(const ZPoly& a) {
    BigInt g = 0;
    for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

/// lc(b)^(deg a - deg b + 1) * a mod b.
inline ZPoly pseudo_remainder(ZPoly a, const ZPoly& b) {
    const int db = zdeg(b);
    const BigInt& lb = b.back();
    int e = zdeg(a) - db + 1;
    while (!a.empty() && zdeg(a) >= db) {
        BigInt la = a.back();
        int shift = zdeg(a) - db;
        for (auto& c : a) c *= lb;
        for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(shift + j)] -= la * b[static_cast<std::size_t>(j)];
        ztrim(a);
        --e;
    }
    BigInt scale;
    mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(std::max(e, 0)));
    for (auto& c : a) c *= scale;
    return a;
}

inline BigInt big_pow(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace detail

/// Resultant of two nonzero integer polynomials by the subresultant
/// pseudo-remainder sequence.
inline BigInt resultant(const IntPolynomial& f, const IntPolynomial& g) {
    using namespace detail;
    ZPoly A = f.coeffs(), B = g.coeffs();
    if (zdeg(A) == 0 && zdeg(B) == 0) return 1;
    if (zdeg(B) == 0) return big_pow(B[0], static_cast<unsigned long>(zdeg(A)));
    if (zdeg(A) == 0) return big_pow(A[0], static_cast<unsigned long>(zdeg(B)));

    BigInt a = zcontent(A), b = zcontent(B);
    for (auto& c : A) c /= a;
    for (auto& c : B) c /= b;
    BigInt g_acc = 1, h = 1;
    int sign = 1;
    BigInt t = big_pow(a, static_cast<unsigned long>(zdeg(B))) * big_pow(b, static_cast<unsigned long>(zdeg(A)));
    if (zdeg(A) < zdeg(B)) {
        std::swap(A, B);
        if ((zdeg(A) & 1) && (zdeg(B) & 1)) sign = -sign;
    }
    for (;;) {
        int delta = zdeg(A) - zdeg(B);
        if ((zdeg(A) & 1) && (zdeg(B) & 1)) sign = -sign;
        ZPoly R = pseudo_remainder(A, B);
        if (R.empty()) return 0;
        A = std::move(B);
        BigInt divisor = g_acc * big_pow(h, static_cast<unsigned long>(delta));
        for (auto& c : R) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
        B = std::move(R);
        g_acc = A.back();
        if (delta == 0) {
            // h unchanged
        } else {
            BigInt num = big_pow(g_acc, static_cast<unsigned long>(delta));
            BigInt den = big_pow(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (zdeg(B) == 0) break;
    }
    int da = zdeg(A);
    BigInt num = big_pow(B.back(), static_cast<unsigned long>(da));
    BigInt den = da >= 1 ? big_pow(h, static_cast<unsigned long>(da - 1)) : BigInt(1);
    BigInt hh;
    mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return sign * t * hh;
}

/// Res(f, f'); zero exactly when f has a repeated factor.
inline BigInt resultant_f_fprime(const IntPolynomial& f) {
    if (f.degree() < 1) throw UsageError("resultant_f_fprime: degree must be at least 1");
    return resultant(f, f.derivative());
}

/// G_f = gcd of all values f(n); equal to gcd(f(0), ..., f(deg f)).
inline BigInt fixed_divisor(const IntPolynomial& f) {
    BigInt g = 0;
    for (int n = 0; n <= f.degree(); ++n) {
        BigInt v = f.eval(n);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    return g;
}

/// A prime p with p^k dividing every value of f, if one exists.
inline std::optional<BigInt> fixed_kth_power_prime(const IntPolynomial& f, unsigned k) {
    if (k < 2) throw UsageError("fixed_kth_power_prime: k must be at least 2");
    BigInt g = fixed_divisor(f);
    if (g == 1) return std::nullopt;
    for (const auto& pf : factorize(g))
        if (pf.e >= k) return pf.p;
    return std::nullopt;
}

inline bool has_fixed_kth_power(const IntPolynomial& f, unsigned k) { return fixed_kth_power_prime(f, k).has_value(); }

enum class Irreducibility { proved, refuted, unverified };

inline std::string_view to_string(Irreducibility v) {
    switch (v) {
        case Irreducibility::proved: return "proved";
        case Irreducibility::refuted: return "refuted";
        case Irreducibility::unverified: return "unverified";
    }
    return "unverified";
}

namespace detail {

/// Positive divisors of |n| (n != 0), or nullopt when there are too many.
inline std::optional<std::vector<BigInt>> divisors(const BigInt& n, std::size_t limit = 1u << 16) {
    std::vector<BigInt> divs{1};
    for (const auto& pf : factorize(n)) {
        std::size_t base = divs.size();
        if (base * (pf.e + 1) > limit) return std::nullopt;
        BigInt pk = 1;
        for (unsigned e = 1; e <= pf.e; ++e) {
            pk *= pf.p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

/// Whether f has a rational root; nullopt when the candidate set is too large.
inline std::optional<bool> has_rational_root(const IntPolynomial& f) {
    if (f.coeff(0) == 0) return true;
    auto num = divisors(f.coeff(0));
    auto den = divisors(f.leading());
    if (!num || !den) return std::nullopt;
    const int d = f.degree();
    for (const auto& q : *den) {
        for (const auto& p0 : *num) {
            for (int s : {1, -1}) {
                BigInt p = s * p0;
                BigInt g;
                mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
                if (g != 1) continue;
                // sum c_i p^i q^(d-i) == 0
                BigInt acc = 0, ppow = 1;
                for (int i = 0; i <= d; ++i) {
                    acc += f.coeff(i) * ppow * big_pow(q, static_cast<unsigned long>(d - i));
                    ppow *= p;
                }
                if (acc == 0) return true;
            }
        }
    }
    return false;
}

/// f mod p irreducible of full degree (p must not divide lc(f)):
/// gcd(x^(p^i) - x, f) = 1 for all i <= d/2.
inline bool irreducible_mod_p(const IntPolynomial& f, u64 p) {
    modp::Poly m = modp::make_monic(f.mod(p), p);
    const int d = modp::degree(m);
    if (d != f.degree()) return false;
    modp::Poly xpi{0, 1};
    for (int i = 1; i <= d / 2; ++i) {
        xpi = modp::powmod(xpi, p, m, p);
        modp::Poly diff = modp::sub(xpi, modp::Poly{0, 1}, p);
        if (modp::degree(modp::gcd(m, diff, p)) != 0) return false;
    }
    return true;
}

}  // namespace detail

/// Tiered certificate: degree 1 is irreducible; degrees 2-3 are decided by
/// the rational root test; higher degrees are proved irreducible by an
/// irreducible reduction modulo a good prime, refuted by a rational root
/// or a repeated factor, and otherwise left unverified.
inline Irreducibility irreducibility_check(const IntPolynomial& f, unsigned primes_to_try = 200) {
    if (f.degree() < 1) throw UsageError("irreducibility_check: degree must be at least 1");
    if (f.degree() == 1) return Irreducibility::proved;
    BigInt c = f.content();
    std::vector<BigInt> prim;
    for (const auto& a : f.coeffs()) prim.push_back(a / c);
    IntPolynomial g(std::move(prim));
    BigInt disc = resultant_f_fprime(g);
    if (disc == 0) return Irreducibility::refuted;
    auto rational = detail::has_rational_root(g);
    if (rational && *rational) return Irreducibility::refuted;
    if (g.degree() <= 3) return rational ? Irreducibility::proved : Irreducibility::unverified;
    BigInt bad = disc * g.leading();
    unsigned tried = 0;
    for (u64 p : trial_primes()) {
        if (tried >= primes_to_try) break;
        if (mod_u64(bad, p) == 0) continue;
        ++tried;
        if (detail::irreducible_mod_p(g, p)) return Irreducibility::proved;
    }
    return Irreducibility::unverified;
}

/// Summary data consumed by the root, sieve and density modules.
struct PolyProfile {
    bool is_squarefree_poly = false;
    Irreducibility irreducibility = Irreducibility::unverified;
    BigInt fixed_divisor = 1;
    bool fixed_divisor_squarefree = true;
    BigInt discriminant_resultant = 0;  ///< Res(f, f')
    BigInt bad_prime_bound_data = 0;    ///< Res(f, f') * lc(f); bad primes divide it
};

inline PolyProfile profile(const IntPolynomial& f) {
    if (f.degree() < 1) throw UsageError("profile: degree must be at least 1");
    PolyProfile pr;
    pr.discriminant_resultant = resultant_f_fprime(f);
    pr.is_squarefree_poly = pr.discriminant_resultant != 0;
    pr.bad_prime_bound_data = pr.discriminant_resultant * f.leading();
    pr.irreducibility = irreducibility_check(f);
    pr.fixed_divisor = fixed_divisor(f);
    pr.fixed_divisor_squarefree = true;
    if (pr.fixed_divisor > 1)
        for (const auto& pf : factorize(pr.fixed_divisor))
            if (pf.e >= 2) pr.fixed_divisor_squarefree = false;
    return pr;
}

}  // namespace pfv
