#pragma once

// Text descriptors for systems, conditions and argument maps, and the JSON
// experiment config.
//
//   system     twopoint:<g0>,<g1>,<x>
//              cyclic:<m>,<x>,g=<v0>;<v1>;...;<v(m-1)>
//              circle:alpha=<real|golden>,x=<real>,g=<trig>
//                  trig := term (('+'|'-') term)*,
//                  term := <real> | [<real>]cos<h> | [<real>]sin<h>
//                  e.g. 1+cos1-0.5sin2; the constant term comes first.
//   condition  all | twin | kfree:<coeffs>:<k> | product:<coeffs>*<coeffs>[*...]:<k>
//              | mask:full | mask:empty | mask:@<path>
//   argmap     id | prog:<m>,<r> | beatty:<a>/<q>,<b>/<q> | beatty:<alpha>,<beta>
//
// Printing is canonical: parse(print(d)) == d, and print(parse(s)) == s for
// strings already in canonical form.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pfv/dynamics.hpp"
#include "pfv/ergodic.hpp"
#include "pfv/error.hpp"
#include "pfv/numeric.hpp"
#include "pfv/polynomial.hpp"

namespace pfv {

namespace detail {

inline std::string fmt_double(double v) {
    if (v == 0) v = 0;  // drop the sign of -0
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline double parse_double(std::string_view s, std::string_view what) {
    double v = 0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    if (!s.empty() && *b == '+') ++b;
    auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc{} || r.ptr != e || !std::isfinite(v))
        throw UsageError("invalid number '" + std::string(s) + "' in " + std::string(what));
    return v;
}

template <class Int>
Int parse_int(std::string_view s, std::string_view what) {
    Int v{};
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || s.empty())
        throw UsageError("invalid integer '" + std::string(s) + "' in " + std::string(what));
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

inline bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

inline TrigObservable parse_trig(std::string_view s) {
    TrigObservable g;
    if (s.empty()) throw UsageError("empty trigonometric polynomial");
    // Split at '+'/'-' that start a new term (not an exponent sign).
    std::vector<std::string> terms;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool exp_sign = i > 0 && (s[i - 1] == 'e' || s[i - 1] == 'E') && i > 1 &&
                        std::isdigit(static_cast<unsigned char>(s[i - 2]));
        if ((c == '+' || c == '-') && i > 0 && !exp_sign) {
            terms.push_back(cur);
            cur.clear();
        }
        cur.push_back(c);
    }
    terms.push_back(cur);
    bool first = true;
    for (const auto& t : terms) {
        std::string_view tv = t;
        std::size_t pos = tv.find("cos");
        bool is_cos = pos != std::string_view::npos;
        if (!is_cos) pos = tv.find("sin");
        if (pos == std::string_view::npos) {
            if (!first) throw UsageError("constant term must come first in '" + std::string(s) + "'");
            g.a0 = parse_double(tv, "observable");
            first = false;
            continue;
        }
        if (first) throw UsageError("trigonometric polynomial must start with its constant term");
        std::string_view coef = tv.substr(0, pos);
        if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
        double c = 1;
        if (coef == "+" || coef.empty()) c = 1;
        else if (coef == "-") c = -1;
        else c = parse_double(coef, "observable");
        unsigned h = parse_int<unsigned>(tv.substr(pos + 3), "observable frequency");
        if (h == 0) throw UsageError("frequency must be at least 1");
        auto same = std::find_if(g.terms.begin(), g.terms.end(), [h](const TrigTerm& t) { return t.h == h; });
        if (same == g.terms.end()) same = g.terms.insert(g.terms.end(), TrigTerm{h, 0, 0});
        (is_cos ? same->a : same->b) += c;
    }
    return g;
}

inline std::string print_trig(const TrigObservable& g) {
    std::string out = fmt_double(g.a0);
    auto part = [&](double c, const char* name, unsigned h) {
        if (c == 0) return;
        if (c == 1) out += "+";
        else if (c == -1) out += "-";
        else out += (c > 0 ? "+" : "") + fmt_double(c);
        out += name + std::to_string(h);
    };
    for (const auto& t : g.terms) {
        part(t.a, "cos", t.h);
        part(t.b, "sin", t.h);
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

struct SystemSpec {
    System system;
    Observable observable;
    Point x;
};

inline SystemSpec parse_system(std::string_view s) {
    using namespace detail;
    SystemSpec spec;
    if (starts_with(s, "twopoint:")) {
        auto parts = split(s.substr(9), ',');
        if (parts.size() != 3) throw UsageError("twopoint descriptor needs g0,g1,x");
        spec.system = TwoPoint{};
        spec.observable = PairObservable{parse_double(parts[0], "twopoint"), parse_double(parts[1], "twopoint")};
        spec.x = parse_int<u64>(parts[2], "twopoint point");
    } else if (starts_with(s, "cyclic:")) {
        auto body = s.substr(7);
        auto gpos = body.find(",g=");
        if (gpos == std::string_view::npos) throw UsageError("cyclic descriptor needs m,x,g=v0;v1;...");
        auto head = split(body.substr(0, gpos), ',');
        if (head.size() != 2) throw UsageError("cyclic descriptor needs m,x,g=...");
        CyclicRotation c{parse_int<u64>(head[0], "cyclic modulus")};
        VectorObservable v;
        for (auto t : split(body.substr(gpos + 3), ';')) v.values.push_back(parse_double(t, "cyclic observable"));
        spec.system = c;
        spec.observable = v;
        spec.x = parse_int<u64>(head[1], "cyclic point");
    } else if (starts_with(s, "circle:")) {
        auto body = s.substr(7);
        if (!starts_with(body, "alpha=")) throw UsageError("circle descriptor needs alpha=...,x=...,g=...");
        auto xpos = body.find(",x=");
        auto gpos = body.find(",g=");
        if (xpos == std::string_view::npos || gpos == std::string_view::npos || gpos < xpos)
            throw UsageError("circle descriptor needs alpha=...,x=...,g=...");
        auto a = body.substr(6, xpos - 6);
        CircleRotation c;
        if (a == "golden") {
            c.alpha = golden_alpha();
            c.golden = true;
        } else {
            c.alpha = parse_double(a, "circle alpha");
        }
        spec.system = c;
        spec.x = parse_double(body.substr(xpos + 3, gpos - xpos - 3), "circle point");
        spec.observable = parse_trig(body.substr(gpos + 3));
    } else {
        throw UsageError("unknown system descriptor '" + std::string(s) + "' (twopoint:, cyclic:, circle:)");
    }
    detail::check_pair(spec.system, spec.observable);
    if (std::holds_alternative<TwoPoint>(spec.system)) detail::discrete_point(spec.x, 2);
    else if (auto* c = std::get_if<CyclicRotation>(&spec.system)) detail::discrete_point(spec.x, c->m);
    else detail::circle_point(spec.x);
    return spec;
}

inline std::string print_system(const SystemSpec& s) {
    using detail::fmt_double;
    if (std::holds_alternative<TwoPoint>(s.system)) {
        const auto& p = std::get<PairObservable>(s.observable);
        return "twopoint:" + fmt_double(p.g0) + "," + fmt_double(p.g1) + "," + std::to_string(std::get<u64>(s.x));
    }
    if (auto* c = std::get_if<CyclicRotation>(&s.system)) {
        std::string out = "cyclic:" + std::to_string(c->m) + "," + std::to_string(std::get<u64>(s.x)) + ",g=";
        const auto& v = std::get<VectorObservable>(s.observable).values;
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + fmt_double(v[i]);
        return out;
    }
    const auto& c = std::get<CircleRotation>(s.system);
    return "circle:alpha=" + (c.golden ? std::string("golden") : fmt_double(c.alpha)) +
           ",x=" + fmt_double(std::get<double>(s.x)) + ",g=" + detail::print_trig(std::get<TrigObservable>(s.observable));
}

// ---------------------------------------------------------------------------

inline Condition parse_condition(std::string_view s) {
    using namespace detail;
    if (s == "all") return AllCondition{};
    if (s == "twin") return TwinSquarefree{};
    if (s == "mask:full") return CustomMask{CustomMask::Kind::full, {}};
    if (s == "mask:empty") return CustomMask{CustomMask::Kind::empty, {}};
    if (starts_with(s, "mask:@")) {
        if (s.size() == 6) throw UsageError("mask:@ needs a path");
        return CustomMask{CustomMask::Kind::file, std::string(s.substr(6))};
    }
    auto poly_k = [&](std::string_view body, const char* what) {
        auto pos = body.rfind(':');
        if (pos == std::string_view::npos) throw UsageError(std::string(what) + " descriptor needs <poly>:<k>");
        unsigned k = parse_int<unsigned>(body.substr(pos + 1), "condition exponent");
        if (k < 2) throw UsageError("condition exponent k must be at least 2");
        return std::pair{body.substr(0, pos), k};
    };
    if (starts_with(s, "kfree:")) {
        auto [poly, k] = poly_k(s.substr(6), "kfree");
        return KFreePoly{parse_polynomial(std::string(poly)), k};
    }
    if (starts_with(s, "product:")) {
        auto [poly, k] = poly_k(s.substr(8), "product");
        return ProductPoly{parse_factored_polynomial(std::string(poly)), k};
    }
    throw UsageError("unknown condition descriptor '" + std::string(s) + "' (all, twin, kfree:, product:, mask:)");
}

inline std::string print_condition(const Condition& c) {
    if (std::holds_alternative<AllCondition>(c)) return "all";
    if (std::holds_alternative<TwinSquarefree>(c)) return "twin";
    if (auto* kf = std::get_if<KFreePoly>(&c)) return "kfree:" + kf->f.to_string() + ":" + std::to_string(kf->k);
    if (auto* pp = std::get_if<ProductPoly>(&c))
        return "product:" + format_factored_polynomial(pp->factors) + ":" + std::to_string(pp->k);
    const auto& m = std::get<CustomMask>(c);
    switch (m.kind) {
        case CustomMask::Kind::full: return "mask:full";
        case CustomMask::Kind::empty: return "mask:empty";
        case CustomMask::Kind::file: return "mask:@" + m.path;
    }
    throw InternalError("unknown mask kind");
}

// ---------------------------------------------------------------------------

inline ArgumentMap parse_argmap(std::string_view s) {
    using namespace detail;
    ArgumentMap out;
    if (s == "id") {
        out = IdentityMap{};
    } else if (starts_with(s, "prog:")) {
        auto parts = split(s.substr(5), ',');
        if (parts.size() != 2) throw UsageError("progression descriptor needs m,r");
        out = ProgressionMap{parse_int<u64>(parts[0], "progression"), parse_int<u64>(parts[1], "progression")};
    } else if (starts_with(s, "beatty:")) {
        auto parts = split(s.substr(7), ',');
        if (parts.size() != 2) throw UsageError("Beatty descriptor needs alpha,beta");
        if (parts[0].find('/') != std::string_view::npos || parts[1].find('/') != std::string_view::npos) {
            auto a = split(parts[0], '/'), b = split(parts[1], '/');
            if (a.size() != 2 || b.size() != 2) throw UsageError("rational Beatty descriptor needs a/q,b/q");
            i64 q = parse_int<i64>(a[1], "Beatty denominator");
            if (parse_int<i64>(b[1], "Beatty denominator") != q)
                throw UsageError("rational Beatty descriptor needs a common denominator");
            out = BeattyRational{parse_int<i64>(a[0], "Beatty"), parse_int<i64>(b[0], "Beatty"), q};
        } else {
            out = BeattyReal{parse_double(parts[0], "Beatty alpha"), parse_double(parts[1], "Beatty beta")};
        }
    } else {
        throw UsageError("unknown argument map '" + std::string(s) + "' (id, prog:, beatty:)");
    }
    validate(out);
    return out;
}

inline std::string print_argmap(const ArgumentMap& m) {
    if (std::holds_alternative<IdentityMap>(m)) return "id";
    if (auto* p = std::get_if<ProgressionMap>(&m)) return "prog:" + std::to_string(p->m) + "," + std::to_string(p->r);
    if (auto* b = std::get_if<BeattyRational>(&m))
        return "beatty:" + std::to_string(b->a) + "/" + std::to_string(b->q) + "," + std::to_string(b->b) + "/" +
               std::to_string(b->q);
    const auto& r = std::get<BeattyReal>(m);
    return "beatty:" + detail::fmt_double(r.alpha) + "," + detail::fmt_double(r.beta);
}

// ---------------------------------------------------------------------------

struct ExperimentConfig {
    std::string name;
    std::vector<BigInt> coeffs;
    unsigned k = 2;
    u64 N = 0;
    std::vector<u64> checkpoints;
    std::string system;
    std::string condition;
    std::string argmap;
    u64 P = 1'000'000;
    std::string out;
    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

inline nlohmann::ordered_json big_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max()) return v.get_si();
    return v.get_str();
}

inline BigInt big_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return BigInt(j.get<long>());
    if (j.is_string()) {
        BigInt v;
        if (v.set_str(j.get<std::string>(), 10) != 0) throw UsageError("invalid integer in config");
        return v;
    }
    throw UsageError("config coefficients must be integers");
}

inline nlohmann::ordered_json to_json(const ExperimentConfig& c) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["coeffs"] = nlohmann::ordered_json::array();
    for (const auto& v : c.coeffs) j["coeffs"].push_back(big_to_json(v));
    j["k"] = c.k;
    j["N"] = c.N;
    j["checkpoints"] = c.checkpoints;
    j["system"] = c.system;
    j["condition"] = c.condition;
    j["argmap"] = c.argmap;
    j["P"] = c.P;
    j["out"] = c.out;
    return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    static const std::vector<std::string> keys = {"name", "coeffs", "k", "N", "checkpoints", "system",
                                                  "condition", "argmap", "P", "out"};
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
            throw UsageError("unknown config key '" + it.key() + "'");
    ExperimentConfig c;
    try {
        c.name = j.value("name", std::string{});
        if (j.contains("coeffs"))
            for (const auto& v : j.at("coeffs")) c.coeffs.push_back(big_from_json(v));
        c.k = j.value("k", 2u);
        c.N = j.value("N", u64{0});
        if (j.contains("checkpoints")) c.checkpoints = j.at("checkpoints").get<std::vector<u64>>();
        c.system = j.value("system", std::string{});
        c.condition = j.value("condition", std::string{});
        c.argmap = j.value("argmap", std::string{});
        c.P = j.value("P", u64{1'000'000});
        c.out = j.value("out", std::string{});
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed config: ") + e.what());
    }
    for (std::size_t i = 1; i < c.checkpoints.size(); ++i)
        if (c.checkpoints[i] <= c.checkpoints[i - 1]) throw UsageError("config checkpoints must be strictly ascending");
    return c;
}

inline ExperimentConfig parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

}  // namespace pfv
