#pragma once

// Averages of g(T^{Omega(arg n)} x) over n <= N in a condition set, through
// the histogram of Omega(arg n): the average is sum_j counts[j] g(T^j x) / N.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pfv/arith_sieve.hpp"
#include "pfv/bitset.hpp"
#include "pfv/dynamics.hpp"
#include "pfv/error.hpp"
#include "pfv/euler_density.hpp"
#include "pfv/kfree_sieve.hpp"
#include "pfv/numeric.hpp"
#include "pfv/parallel.hpp"
#include "pfv/polynomial.hpp"

namespace pfv {

// ---------------------------------------------------------------------------
// Argument maps

struct IdentityMap {
    friend bool operator==(const IdentityMap&, const IdentityMap&) = default;
};
struct ProgressionMap {
    u64 m = 1, r = 0;  ///< n -> m n + r
    friend bool operator==(const ProgressionMap&, const ProgressionMap&) = default;
};
/// n -> floor((a n + b) / q), alpha = a/q, beta = b/q.
struct BeattyRational {
    i64 a = 1, b = 0, q = 1;
    friend bool operator==(const BeattyRational&, const BeattyRational&) = default;
};
/// n -> floor(alpha n + beta) for the exact binary values of alpha, beta.
struct BeattyReal {
    double alpha = 1, beta = 0;
    friend bool operator==(const BeattyReal&, const BeattyReal&) = default;
};

using ArgumentMap = std::variant<IdentityMap, ProgressionMap, BeattyRational, BeattyReal>;

namespace detail {

inline u64 floor_div_pos(i128 num, i128 den) {
    i128 q = num / den;
    if ((num % den != 0) && (num < 0)) --q;
    if (q < 1) throw DomainError("Beatty argument below 1");
    if (q > static_cast<i128>(std::numeric_limits<u64>::max())) throw CapacityError("Beatty argument overflows 64 bits");
    return static_cast<u64>(q);
}

inline u64 beatty_real_exact(double alpha, double beta, u64 n) {
    mpq_class a(alpha), b(beta);
    mpq_class t = a * mpq_class(to_big(n)) + b;
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    if (fl < 1) throw DomainError("Beatty argument below 1");
    if (!fits_u64(fl)) throw CapacityError("Beatty argument overflows 64 bits");
    return to_u64(fl);
}

}  // namespace detail

inline void validate(const ArgumentMap& map) {
    if (auto* p = std::get_if<ProgressionMap>(&map)) {
        if (p->m < 1 || p->r >= p->m) throw UsageError("progression needs m >= 1 and 0 <= r < m");
    } else if (auto* b = std::get_if<BeattyRational>(&map)) {
        if (b->q < 1 || b->a < 1) throw UsageError("Beatty map needs alpha > 0 and a positive denominator");
        if (static_cast<i128>(b->a) + b->b <= b->q) throw UsageError("Beatty map needs alpha + beta > 1");
    } else if (auto* r = std::get_if<BeattyReal>(&map)) {
        if (!(r->alpha > 0) || !std::isfinite(r->alpha) || !std::isfinite(r->beta))
            throw UsageError("Beatty map needs a finite alpha > 0");
        if (!(mpq_class(r->alpha) + mpq_class(r->beta) > 1)) throw UsageError("Beatty map needs alpha + beta > 1");
    }
}

/// arg(n) for n >= 1.
inline u64 apply(const ArgumentMap& map, u64 n) {
    if (std::holds_alternative<IdentityMap>(map)) return n;
    if (auto* p = std::get_if<ProgressionMap>(&map)) {
        u128 v = static_cast<u128>(p->m) * n + p->r;
        if (v > std::numeric_limits<u64>::max()) throw CapacityError("progression argument overflows 64 bits");
        return static_cast<u64>(v);
    }
    if (auto* b = std::get_if<BeattyRational>(&map))
        return detail::floor_div_pos(static_cast<i128>(b->a) * static_cast<i128>(n) + b->b, b->q);
    const auto& r = std::get<BeattyReal>(map);
    const long double t = static_cast<long double>(r.alpha) * static_cast<long double>(n) + r.beta;
    const long double fl = std::floor(t);
    // Close to an integer the rounded value may land on the wrong side.
    if (t - fl < 1e-6L || fl + 1 - t < 1e-6L || t >= 1.8e19L) return detail::beatty_real_exact(r.alpha, r.beta, n);
    if (fl < 1) throw DomainError("Beatty argument below 1");
    return static_cast<u64>(fl);
}

/// True when the map is an affine map with rational coefficients, so that
/// the progression statement applies rather than the Beatty one.
inline bool is_rational_beatty(const ArgumentMap& map) { return std::holds_alternative<BeattyRational>(map); }

// ---------------------------------------------------------------------------
// Conditions

struct AllCondition {};
struct KFreePoly {
    IntPolynomial f;
    unsigned k = 2;
};
struct TwinSquarefree {};
struct ProductPoly {
    std::vector<IntPolynomial> factors;
    unsigned k = 2;
};
struct CustomMask {
    enum class Kind { full, empty, file };
    Kind kind = Kind::full;
    std::string path;  ///< for Kind::file: one '0'/'1' per n, whitespace ignored
};

using Condition = std::variant<AllCondition, KFreePoly, TwinSquarefree, ProductPoly, CustomMask>;

inline Bitset read_mask_file(const std::string& path, u64 N) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open mask file " + path);
    Bitset bits(N);
    u64 i = 0;
    char c;
    while (i < N && in.get(c)) {
        if (c == '1') bits.set(i++);
        else if (c == '0') ++i;
        else if (!std::isspace(static_cast<unsigned char>(c))) throw UsageError("mask file holds a character other than 0/1");
    }
    if (i < N) throw UsageError("mask file " + path + " covers only " + std::to_string(i) + " < N entries");
    return bits;
}

struct ErgodicOptions {
    ExecPolicy exec{};
    KfreeOptions kfree{};
    u64 P = 1'000'000;  ///< prime bound for density targets
    u64 max_argument = SieveOptions{}.max_hi - 1;
    std::function<void(const std::string&)> log;  ///< progress sink, may be empty
};

/// The condition as a bitset over [1, N] (bit n-1).
inline Bitset condition_mask(const Condition& c, u64 N, const ErgodicOptions& opts = {}) {
    KfreeOptions ko = opts.kfree;
    ko.exec.threads = opts.exec.threads;
    if (std::holds_alternative<AllCondition>(c)) return Bitset(N, true);
    if (auto* kf = std::get_if<KFreePoly>(&c)) return kfree_mask(kf->f, kf->k, N, ko).bits;
    if (std::holds_alternative<TwinSquarefree>(c)) return twin_squarefree_mask(N, opts.exec);
    if (auto* pp = std::get_if<ProductPoly>(&c)) return kfree_mask(pp->factors, pp->k, N, ko).bits;
    const auto& cm = std::get<CustomMask>(c);
    switch (cm.kind) {
        case CustomMask::Kind::full: return Bitset(N, true);
        case CustomMask::Kind::empty: return Bitset(N, false);
        case CustomMask::Kind::file: return read_mask_file(cm.path, N);
    }
    throw InternalError("unknown mask kind");
}

// ---------------------------------------------------------------------------
// Histograms

struct OmegaHistogram {
    std::vector<u64> counts;  ///< counts[j] = #{n <= N selected : Omega(arg n) = j}
    u64 selected = 0;
    u64 N = 0;
    friend bool operator==(const OmegaHistogram&, const OmegaHistogram&) = default;
};

/// One histogram per checkpoint (cumulative), in a single pass over n.
inline std::vector<OmegaHistogram> omega_histograms(std::span<const u64> checkpoints, const Bitset& mask,
                                                    const ArgumentMap& map, const ErgodicOptions& opts = {}) {
    validate(map);
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1]) throw UsageError("checkpoints must be strictly ascending");
    const u64 N = checkpoints.empty() ? 0 : checkpoints.back();
    if (mask.size() < N) throw UsageError("condition mask shorter than N");
    const std::size_t nb = checkpoints.size();
    constexpr std::size_t J = 64;
    std::vector<OmegaHistogram> out(nb);
    for (std::size_t b = 0; b < nb; ++b) out[b].N = checkpoints[b];
    if (N == 0) {
        for (auto& h : out) h.counts.assign(1, 0);
        return out;
    }
    const u64 top = apply(map, N);
    if (top > opts.max_argument)
        throw CapacityError("argument " + std::to_string(top) + " exceeds sieve capacity " +
                            std::to_string(opts.max_argument));

    const u64 block = std::max<u64>(64, opts.exec.segment);
    const std::size_t nblocks = static_cast<std::size_t>((N + block - 1) / block);
    std::vector<std::vector<u64>> local(nblocks);
    SieveOptions so;
    so.max_hi = std::max(so.max_hi, opts.max_argument + 1);
    parallel_for(nblocks, opts.exec.threads, [&](std::size_t bi) {
        const u64 lo = 1 + bi * block;
        const u64 hi = std::min<u64>(N, lo + block - 1);
        std::vector<u64>& cnt = local[bi];
        cnt.assign(nb * J, 0);
        const u64 alo = apply(map, lo), ahi = apply(map, hi);
        const ArithTables t = build_tables(alo, ahi + 1, so);
        const auto& om = t.omega_values();
        std::size_t bucket = static_cast<std::size_t>(std::lower_bound(checkpoints.begin(), checkpoints.end(), lo) -
                                                      checkpoints.begin());
        for (u64 n = lo; n <= hi; ++n) {
            while (checkpoints[bucket] < n) ++bucket;
            if (!mask.test(n - 1)) continue;
            ++cnt[bucket * J + om[apply(map, n) - alo]];
        }
        if (opts.log) opts.log("histogram block " + std::to_string(bi + 1) + "/" + std::to_string(nblocks));
    });
    std::vector<u64> running(J, 0);
    for (std::size_t b = 0; b < nb; ++b) {
        for (const auto& cnt : local)
            for (std::size_t j = 0; j < J; ++j) running[j] += cnt[b * J + j];
        std::size_t last = J;
        while (last > 1 && running[last - 1] == 0) --last;
        out[b].counts.assign(running.begin(), running.begin() + last);
        for (u64 c : out[b].counts) out[b].selected += c;
    }
    return out;
}

inline OmegaHistogram omega_histogram(u64 N, const Condition& c, const ArgumentMap& map, const ErgodicOptions& opts = {}) {
    const u64 cps[1] = {N};
    if (N == 0) return {{0}, 0, 0};
    return omega_histograms(cps, condition_mask(c, N, opts), map, opts)[0];
}

/// (1/N) sum_j counts[j] values[j]; 0 for N = 0.
inline double ergodic_average(const OmegaHistogram& h, const OrbitTable& t) {
    if (h.N == 0) return 0.0;
    long double s = 0;
    for (std::size_t j = 0; j < h.counts.size(); ++j) {
        if (h.counts[j] == 0) continue;
        if (j >= t.values.size())
            throw UsageError("orbit table too short: J_max = " + std::to_string(t.J_max) + " but Omega reaches " +
                             std::to_string(j));
        s += static_cast<long double>(h.counts[j]) * t.values[j];
    }
    return static_cast<double>(s / static_cast<long double>(h.N));
}

// ---------------------------------------------------------------------------
// Reports

struct ConvergenceRow {
    u64 N = 0;
    u64 selected = 0;
    double average = 0;
    double target = 0;
    double residual = 0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    std::vector<OmegaHistogram> histograms;
    double density = 1;
    std::string density_source;
    double mean = 0;
    double target = 0;
    std::optional<DensityResult> density_detail;
};

inline long double condition_density(const Condition& c, const Bitset& mask, u64 N, const ErgodicOptions& opts,
                                     std::string& source, std::optional<DensityResult>& detail) {
    DensityOptions dop;
    dop.exec = opts.exec;
    dop.roots = opts.kfree.roots;
    if (std::holds_alternative<AllCondition>(c)) {
        source = "all";
        return 1;
    }
    if (auto* kf = std::get_if<KFreePoly>(&c)) {
        detail = density(kf->f, kf->k, opts.P, dop);
        source = "euler_product";
        return detail->value;
    }
    if (std::holds_alternative<TwinSquarefree>(c)) {
        detail = twin_constant(opts.P, dop);
        source = "twin_constant";
        return detail->value;
    }
    if (auto* pp = std::get_if<ProductPoly>(&c)) {
        detail = density(product(pp->factors), pp->k, opts.P, dop);
        source = "euler_product";
        return detail->value;
    }
    const auto& cm = std::get<CustomMask>(c);
    if (cm.kind == CustomMask::Kind::full) {
        source = "full_mask";
        return 1;
    }
    if (cm.kind == CustomMask::Kind::empty) {
        source = "empty_mask";
        return 0;
    }
    source = "empirical_mask_fraction";
    return N == 0 ? 0 : static_cast<long double>(mask.count_prefix(N)) / static_cast<long double>(N);
}

inline ConvergenceReport convergence_report(const System& s, const Observable& g, const Point& x, const Condition& c,
                                            const ArgumentMap& map, std::span<const u64> checkpoints,
                                            const ErgodicOptions& opts = {}) {
    validate(map);
    if (checkpoints.empty()) throw UsageError("at least one checkpoint is required");
    const u64 N = checkpoints.back();
    ConvergenceReport rep;
    const Bitset mask = condition_mask(c, N, opts);
    rep.density = static_cast<double>(condition_density(c, mask, N, opts, rep.density_source, rep.density_detail));
    const unsigned J = std::min(max_orbit_depth, default_orbit_depth(N == 0 ? 1 : apply(map, N)));
    const OrbitTable table = orbit_table(s, g, x, J);
    rep.mean = table.mean;
    rep.target = rep.density * rep.mean;
    rep.histograms = omega_histograms(checkpoints, mask, map, opts);
    for (const auto& h : rep.histograms) {
        ConvergenceRow row;
        row.N = h.N;
        row.selected = h.selected;
        row.average = ergodic_average(h, table);
        row.target = rep.target;
        row.residual = row.average - row.target;
        rep.rows.push_back(row);
    }
    return rep;
}

/// Least-squares slope of log max(error, 1) against log N; -infinity when
/// every error is zero.
inline double exponent_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw UsageError("exponent_fit needs at least two points");
    bool all_zero = true;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].second < 0) throw UsageError("exponent_fit: errors must be non-negative");
        if (i > 0 && !(points[i].first > points[i - 1].first)) throw UsageError("exponent_fit: N must increase strictly");
        if (points[i].first <= 0) throw UsageError("exponent_fit: N must be positive");
        all_zero = all_zero && points[i].second == 0;
    }
    if (all_zero) return -std::numeric_limits<double>::infinity();
    const double n = static_cast<double>(points.size());
    double sx = 0, sy = 0;
    for (const auto& [N, e] : points) {
        sx += std::log(N);
        sy += std::log(std::max(e, 1.0));
    }
    const double mx = sx / n, my = sy / n;
    double num = 0, den = 0;
    for (const auto& [N, e] : points) {
        const double dx = std::log(N) - mx;
        num += dx * (std::log(std::max(e, 1.0)) - my);
        den += dx * dx;
    }
    return num / den;
}

}  // namespace pfv
