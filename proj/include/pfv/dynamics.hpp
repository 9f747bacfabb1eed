#pragma once

// Uniquely ergodic model systems, observables with exact means, and orbit
// tables g(T^j x) for j = 0..J_max.

#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "pfv/error.hpp"
#include "pfv/numeric.hpp"

namespace pfv {

inline constexpr unsigned max_orbit_depth = 128;

struct TwoPoint {};
struct CyclicRotation {
    u64 m = 1;
};
struct CircleRotation {
    double alpha = 0;
    bool golden = false;  ///< alpha = (sqrt 5 - 1)/2, printed symbolically
};

using System = std::variant<TwoPoint, CyclicRotation, CircleRotation>;

inline double golden_alpha() { return (std::sqrt(5.0) - 1.0) / 2.0; }

inline std::string describe(const System& s) {
    struct {
        std::string operator()(const TwoPoint&) const { return "rotation on two points"; }
        std::string operator()(const CyclicRotation& c) const {
            return "rotation x -> x + 1 on Z/" + std::to_string(c.m) + "Z";
        }
        std::string operator()(const CircleRotation& c) const {
            return c.golden ? "circle rotation by (sqrt(5) - 1)/2" : "circle rotation by " + std::to_string(c.alpha);
        }
    } v;
    return std::visit(v, s);
}

struct TrigTerm {
    unsigned h = 1;  ///< frequency
    double a = 0;    ///< cos(2 pi h x) coefficient
    double b = 0;    ///< sin(2 pi h x) coefficient
    friend bool operator==(const TrigTerm&, const TrigTerm&) = default;
};

struct PairObservable {
    double g0 = 0, g1 = 0;
    friend bool operator==(const PairObservable&, const PairObservable&) = default;
};
struct VectorObservable {
    std::vector<double> values;
    friend bool operator==(const VectorObservable&, const VectorObservable&) = default;
};
struct TrigObservable {
    double a0 = 0;
    std::vector<TrigTerm> terms;
    friend bool operator==(const TrigObservable&, const TrigObservable&) = default;
};

using Observable = std::variant<PairObservable, VectorObservable, TrigObservable>;

/// Exact mean with respect to the invariant measure.
inline double mean(const Observable& g) {
    struct {
        double operator()(const PairObservable& p) const { return (p.g0 + p.g1) / 2; }
        double operator()(const VectorObservable& v) const {
            if (v.values.empty()) throw UsageError("empty cyclic observable");
            long double s = 0;
            for (double x : v.values) s += x;
            return static_cast<double>(s / static_cast<long double>(v.values.size()));
        }
        double operator()(const TrigObservable& t) const { return t.a0; }
    } v;
    return std::visit(v, g);
}

inline double eval_trig(const TrigObservable& g, double x) {
    double s = g.a0;
    for (const auto& t : g.terms) {
        const double ph = 2 * std::numbers::pi * t.h * x;
        s += t.a * std::cos(ph) + t.b * std::sin(ph);
    }
    return s;
}

/// Starting point: point/residue index for discrete systems, real in [0, 1)
/// for the circle.
using Point = std::variant<u64, double>;

struct OrbitTable {
    std::vector<double> values;  ///< values[j] = g(T^j x)
    double mean = 0;
    Point x;
    unsigned J_max = 0;
};

inline unsigned default_orbit_depth(u64 largest_argument) {
    unsigned bits = 0;
    while (largest_argument > 1) {
        largest_argument >>= 1;
        ++bits;
    }
    return 1 + bits;
}

namespace detail {

inline void check_pair(const System& s, const Observable& g) {
    const bool ok = (std::holds_alternative<TwoPoint>(s) && std::holds_alternative<PairObservable>(g)) ||
                    (std::holds_alternative<CyclicRotation>(s) && std::holds_alternative<VectorObservable>(g)) ||
                    (std::holds_alternative<CircleRotation>(s) && std::holds_alternative<TrigObservable>(g));
    if (!ok) throw UsageError("observable does not match the system");
    if (auto* c = std::get_if<CyclicRotation>(&s)) {
        if (c->m < 1) throw UsageError("cyclic rotation needs m >= 1");
        if (std::get<VectorObservable>(g).values.size() != c->m)
            throw UsageError("cyclic observable needs exactly m = " + std::to_string(c->m) + " values");
    }
    if (auto* c = std::get_if<CircleRotation>(&s))
        if (!(c->alpha > 0 && c->alpha < 1)) throw UsageError("circle rotation needs alpha in (0, 1)");
}

inline u64 discrete_point(const Point& x, u64 size) {
    const u64* v = std::get_if<u64>(&x);
    if (!v || *v >= size) throw UsageError("starting point must be an index in [0, " + std::to_string(size) + ")");
    return *v;
}

inline double circle_point(const Point& x) {
    const double* v = std::get_if<double>(&x);
    if (!v || !(*v >= 0 && *v < 1)) throw UsageError("starting point must be a real in [0, 1)");
    return *v;
}

}  // namespace detail

/// Orbit by closed forms: j mod 2, (x + j) mod m, frac(x + j alpha).
inline OrbitTable orbit_table(const System& s, const Observable& g, const Point& x, unsigned J_max) {
    if (J_max > max_orbit_depth) throw UsageError("J_max exceeds " + std::to_string(max_orbit_depth));
    detail::check_pair(s, g);
    OrbitTable t;
    t.mean = mean(g);
    t.x = x;
    t.J_max = J_max;
    t.values.resize(J_max + 1);
    if (std::holds_alternative<TwoPoint>(s)) {
        const u64 x0 = detail::discrete_point(x, 2);
        const auto& p = std::get<PairObservable>(g);
        for (unsigned j = 0; j <= J_max; ++j) t.values[j] = ((x0 + j) % 2 == 0) ? p.g0 : p.g1;
    } else if (auto* c = std::get_if<CyclicRotation>(&s)) {
        const u64 x0 = detail::discrete_point(x, c->m);
        const auto& v = std::get<VectorObservable>(g).values;
        for (unsigned j = 0; j <= J_max; ++j) t.values[j] = v[(x0 + j) % c->m];
    } else {
        const auto& rot = std::get<CircleRotation>(s);
        const double x0 = detail::circle_point(x);
        const auto& tg = std::get<TrigObservable>(g);
        for (unsigned j = 0; j <= J_max; ++j) {
            double y = x0 + j * rot.alpha;
            t.values[j] = eval_trig(tg, y - std::floor(y));
        }
    }
    return t;
}

/// Same table by applying T step by step.
inline OrbitTable orbit_table_iterated(const System& s, const Observable& g, const Point& x, unsigned J_max) {
    if (J_max > max_orbit_depth) throw UsageError("J_max exceeds " + std::to_string(max_orbit_depth));
    detail::check_pair(s, g);
    OrbitTable t;
    t.mean = mean(g);
    t.x = x;
    t.J_max = J_max;
    if (std::holds_alternative<TwoPoint>(s)) {
        u64 y = detail::discrete_point(x, 2);
        const auto& p = std::get<PairObservable>(g);
        for (unsigned j = 0; j <= J_max; ++j, y = 1 - y) t.values.push_back(y == 0 ? p.g0 : p.g1);
    } else if (auto* c = std::get_if<CyclicRotation>(&s)) {
        u64 y = detail::discrete_point(x, c->m);
        const auto& v = std::get<VectorObservable>(g).values;
        for (unsigned j = 0; j <= J_max; ++j, y = (y + 1) % c->m) t.values.push_back(v[y]);
    } else {
        const auto& rot = std::get<CircleRotation>(s);
        double y = detail::circle_point(x);
        const auto& tg = std::get<TrigObservable>(g);
        for (unsigned j = 0; j <= J_max; ++j) {
            t.values.push_back(eval_trig(tg, y));
            y += rot.alpha;
            if (y >= 1) y -= 1;
        }
    }
    return t;
}

/// Indicator of residue s on Z/mZ.
inline VectorObservable indicator(u64 m, u64 s) {
    if (s >= m) throw UsageError("indicator residue out of range");
    VectorObservable v;
    v.values.assign(m, 0.0);
    v.values[s] = 1.0;
    return v;
}

}  // namespace pfv
