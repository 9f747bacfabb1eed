#pragma once

// `pfv` command line. run_cli is the whole program minus process setup, so
// tests can drive it with string vectors and captured streams.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "experiments.hpp"
#include "pfv/arith_sieve.hpp"
#include "pfv/descriptors.hpp"
#include "pfv/euler_density.hpp"
#include "pfv/kfree_sieve.hpp"
#include "pfv/local_roots.hpp"

namespace pfv::cli {

enum ExitCode : int { ok = 0, internal_failure = 1, usage = 2, capacity = 3, hypothesis = 4 };

inline int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::usage: return usage;
        case ErrorKind::capacity: return capacity;
        case ErrorKind::hypothesis: return hypothesis;
        case ErrorKind::domain: return usage;
        case ErrorKind::internal: return internal_failure;
    }
    return internal_failure;
}

/// Accepts plain integers and exact decimal exponents such as 1e6.
inline u64 parse_count(std::string_view s) {
    auto e = s.find_first_of("eE");
    if (e == std::string_view::npos) return detail::parse_int<u64>(s, "integer");
    u64 m = detail::parse_int<u64>(s.substr(0, e), "mantissa");
    unsigned x = detail::parse_int<unsigned>(s.substr(e + 1), "exponent");
    for (unsigned i = 0; i < x; ++i) {
        if (m > ~u64{0} / 10) throw UsageError("integer '" + std::string(s) + "' out of range");
        m *= 10;
    }
    return m;
}

inline std::vector<u64> parse_count_list(std::string_view s) {
    std::vector<u64> v;
    for (auto t : detail::split(s, ',')) v.push_back(parse_count(t));
    return v;
}

struct Flags {
    std::string poly;
    std::string k = "2";
    std::string N;
    std::string Y;
    std::string P;
    std::string checkpoints;
    std::string system;
    std::string condition;
    std::string argmap;
    std::string constant;
    std::string config;
    std::string out;
    std::string format = "csv";
    std::string lo = "1";
    std::string primes = "100";
    std::string delta;
    std::string id;
    unsigned threads = default_threads();
    std::size_t segment = std::size_t{1} << 20;
    bool quiet = false;
};

struct Result {
    std::string name;
    std::string csv;
    ojson json = ojson::object();
    bool has_csv = true;
};

class Runner {
public:
    Runner(Flags f, std::ostream& out, std::ostream& err) : f_(std::move(f)), out_(out), err_(err) {
        if (!f_.config.empty()) load_config();
        if (f_.threads == 0) throw UsageError("--threads must be at least 1");
        if (f_.segment < 64) throw UsageError("--segment must be at least 64");
        if (f_.format != "csv" && f_.format != "json") throw UsageError("--format must be csv or json");
        ctx_.exec = {f_.threads, f_.segment};
        if (!f_.quiet) ctx_.log = [this](const std::string& s) { err_ << "[pfv] " << s << "\n"; };
    }

    int run(const std::string& sub) {
        Result r;
        if (sub == "sieve") r = sieve();
        else if (sub == "rho") r = rho();
        else if (sub == "density") r = density_cmd();
        else if (sub == "count") r = count();
        else if (sub == "eftail") r = eftail();
        else if (sub == "ergodic") r = ergodic();
        else if (sub == "repro") return repro();
        else throw UsageError("unknown subcommand '" + sub + "'");
        emit(r);
        return ok;
    }

private:
    void load_config() {
        std::ifstream in(f_.config);
        if (!in) throw UsageError("cannot read config " + f_.config);
        std::stringstream ss;
        ss << in.rdbuf();
        cfg_ = parse_config(ss.str());
        auto fill = [](std::string& flag, const std::string& v) {
            if (flag.empty() && !v.empty()) flag = v;
        };
        if (f_.poly.empty() && !cfg_->coeffs.empty()) f_.poly = IntPolynomial(cfg_->coeffs).to_string();
        if (f_.k == "2") f_.k = std::to_string(cfg_->k);
        if (f_.N.empty() && cfg_->N) f_.N = std::to_string(cfg_->N);
        if (f_.checkpoints.empty() && !cfg_->checkpoints.empty()) {
            std::string s;
            for (u64 c : cfg_->checkpoints) s += (s.empty() ? "" : ",") + std::to_string(c);
            f_.checkpoints = s;
        }
        fill(f_.system, cfg_->system);
        fill(f_.condition, cfg_->condition);
        fill(f_.argmap, cfg_->argmap);
        if (f_.P.empty()) f_.P = std::to_string(cfg_->P);
        fill(f_.out, cfg_->out);
    }

    template <class T>
    T require(const std::string& v, const char* flag) const {
        if (v.empty()) throw UsageError(std::string("missing required flag ") + flag);
        if constexpr (std::is_same_v<T, u64>) return parse_count(v);
        else return detail::parse_int<T>(v, flag);
    }

    unsigned k() const { return require<unsigned>(f_.k, "--k"); }
    u64 P(u64 fallback = 1'000'000) const { return f_.P.empty() ? fallback : parse_count(f_.P); }
    std::vector<IntPolynomial> factors() const {
        if (f_.poly.empty()) throw UsageError("missing required flag --poly");
        return parse_factored_polynomial(f_.poly);
    }
    std::vector<u64> checkpoints() const {
        std::vector<u64> c;
        if (!f_.checkpoints.empty()) c = parse_count_list(f_.checkpoints);
        if (!f_.N.empty()) {
            u64 N = parse_count(f_.N);
            if (c.empty() || c.back() < N) c.push_back(N);
            else if (c.back() > N) throw UsageError("checkpoints exceed --N");
        }
        if (c.empty()) throw UsageError("missing --N or --checkpoints");
        for (std::size_t i = 1; i < c.size(); ++i)
            if (c[i] <= c[i - 1]) throw UsageError("checkpoints must be strictly ascending");
        if (c.front() == 0) throw UsageError("checkpoints must be positive");
        return c;
    }

    void emit(const Result& r) {
        if (!f_.out.empty()) {
            std::filesystem::create_directories(f_.out);
            if (r.has_csv) write_file(f_.out + "/" + r.name + ".csv", r.csv);
            write_file(f_.out + "/" + r.name + ".json", r.json.dump(2) + "\n");
            return;
        }
        if (f_.format == "json" || !r.has_csv) out_ << r.json.dump(2) << "\n";
        else out_ << r.csv;
    }

    static void write_file(const std::string& path, const std::string& text) {
        std::ofstream o(path, std::ios::binary);
        if (!o) throw UsageError("cannot write " + path);
        o << text;
    }

    Result sieve() {
        const u64 lo = parse_count(f_.lo), n = require<u64>(f_.N, "--N");
        if (n == 0) throw UsageError("--N must be positive");
        SieveOptions so;
        so.exec = ctx_.exec;
        auto t = build_tables(lo, lo + n, so);
        Result r{"sieve", "n,omega,mobius,squarefree\n"};
        ojson rows = ojson::array();
        for (u64 x = lo; x < lo + n; ++x) {
            r.csv += std::to_string(x) + "," + std::to_string(t.omega(x)) + "," + std::to_string(t.mobius(x)) + "," +
                     (t.is_squarefree(x) ? "1" : "0") + "\n";
            if (f_.format == "json" || !f_.out.empty())
                rows.push_back({{"n", x}, {"omega", t.omega(x)}, {"mobius", t.mobius(x)}, {"squarefree", t.is_squarefree(x)}});
        }
        r.json = {{"lo", lo}, {"hi", lo + n}, {"rows", rows}};
        return r;
    }

    Result rho() {
        const auto fs = factors();
        const IntPolynomial f = product(fs);
        const unsigned kk = k();
        const u64 bound = parse_count(f_.primes);
        if (f.degree() < 1) throw UsageError("--poly must have degree at least 1");
        const BigInt bad = resultant_f_fprime(f) * f.leading();
        Result r{"rho", "p,k,rho,is_bad\n"};
        ojson rows = ojson::array();
        for (u64 p : primes_up_to(bound)) {
            const BigInt v = rho_prime_power(f, p, kk, bad);
            const bool b = is_bad_prime(bad, p);
            r.csv += std::to_string(p) + "," + std::to_string(kk) + "," + v.get_str() + "," + (b ? "1" : "0") + "\n";
            rows.push_back({{"p", p}, {"k", kk}, {"rho", v.get_str()}, {"is_bad", b}});
        }
        r.json = {{"coeffs", f.to_string()}, {"k", kk}, {"primes", bound}, {"rows", rows}};
        return r;
    }

    Result density_cmd() {
        const u64 PP = P(100'000);
        DensityResult d;
        DensityOptions dop;
        dop.exec = ctx_.exec;
        if (f_.constant == "twin") d = twin_constant(PP, dop);
        else if (f_.constant == "estermann") d = estermann_constant(PP, dop);
        else if (f_.constant == "bb") d = bb_constant(PP, dop);
        else if (!f_.constant.empty()) throw UsageError("--constant must be twin, estermann or bb");
        else d = density(product(factors()), k(), PP, dop);
        Result r{"density", "", density_json(d), false};
        return r;
    }

    Result count() {
        const auto fs = factors();
        const unsigned kk = k();
        const auto cps = checkpoints();
        KfreeOptions ko = kfree_options(ctx_);
        ctx_.info("count: sieving " + format_factored_polynomial(fs) + " up to " + std::to_string(cps.back()));
        auto rep = count_kfree(fs, kk, cps.back(), cps, P(), ko);
        ExperimentOutput o;
        fill_counts(o, rep.rows);
        Result r{"count", o.csv()};
        r.json["factors"] = format_factored_polynomial(fs);
        r.json["k"] = kk;
        r.json["checkpoints"] = cps;
        r.json["density"] = density_json(rep.density);
        if (cps.size() >= 2) r.json["exponent_fit"] = fit_rows(rep.rows);
        ojson rows = ojson::array();
        for (const auto& row : rep.rows)
            rows.push_back({{"N", row.N}, {"count", row.count}, {"target", static_cast<double>(row.target)},
                            {"abs_error", static_cast<double>(row.abs_error)},
                            {"rel_error", static_cast<double>(row.rel_error)}});
        r.json["rows"] = rows;
        return r;
    }

    Result eftail() {
        const auto fs = factors();
        const unsigned kk = k();
        const auto Ns = checkpoints();
        std::vector<u64> Ys;
        if (!f_.Y.empty()) Ys = parse_count_list(f_.Y);
        std::optional<double> delta;
        if (!f_.delta.empty()) delta = detail::parse_double(f_.delta, "--delta");
        if (Ys.empty() == !delta.has_value()) throw UsageError("eftail needs exactly one of --Y or --delta");
        if (delta && !(*delta > 0 && *delta < 1)) throw UsageError("--delta must lie in (0, 1)");
        Result r{"eftail", "N,Y,E_f\n"};
        ojson rows = ojson::array();
        std::vector<std::pair<double, double>> pts;
        KfreeOptions ko = kfree_options(ctx_);
        for (u64 N : Ns) {
            ctx_.info("eftail: N = " + std::to_string(N));
            const auto sets = kth_power_prime_sets(fs, kk, N, ko.tail_cap);
            std::vector<u64> ys = Ys;
            if (delta) ys = {std::max<u64>(1, static_cast<u64>(std::floor(std::pow(static_cast<double>(N), 1 - *delta))))};
            for (u64 Y : ys) {
                auto t = e_f_tail(sets, Y);
                r.csv += std::to_string(N) + "," + std::to_string(Y) + "," + t.value.get_str() + "\n";
                rows.push_back({{"N", N}, {"Y", Y}, {"E_f", t.value.get_str()}});
                if (delta) pts.push_back({static_cast<double>(N), t.value.get_d()});
            }
        }
        r.json["factors"] = format_factored_polynomial(fs);
        r.json["k"] = kk;
        if (delta) r.json["delta"] = *delta;
        r.json["rows"] = rows;
        if (pts.size() >= 2) r.json["exponent_fit"] = exponent_fit(pts);
        return r;
    }

    Result ergodic() {
        if (f_.system.empty()) throw UsageError("missing required flag --system");
        const SystemSpec s = parse_system(f_.system);
        const Condition c = parse_condition(f_.condition.empty() ? "all" : f_.condition);
        const ArgumentMap m = parse_argmap(f_.argmap.empty() ? "id" : f_.argmap);
        const auto cps = checkpoints();
        const u64 PP = P();
        auto rep = convergence_report(s.system, s.observable, s.x, c, m, cps, ergodic_options(ctx_, PP));
        ExperimentOutput o;
        o.meta["config"] = config_json(s, c, m, cps, PP);
        fill_convergence(o, rep);
        Result r{cfg_ && !cfg_->name.empty() ? cfg_->name : "ergodic", o.csv(), o.meta};
        ojson rows = ojson::array();
        for (const auto& row : rep.rows)
            rows.push_back({{"N", row.N}, {"selected", row.selected}, {"average", row.average},
                            {"target", row.target}, {"residual", row.residual}});
        r.json["rows"] = rows;
        return r;
    }

    int repro() {
        const auto& reg = experiments();
        auto it = reg.find(f_.id);
        if (it == reg.end()) {
            std::string ids;
            for (const auto& [id, fn] : reg) ids += (ids.empty() ? "" : ", ") + id;
            throw UsageError("unknown experiment '" + f_.id + "' (known: " + ids + ")");
        }
        const std::string dir = f_.out.empty() ? "." : f_.out;
        std::filesystem::create_directories(dir);
        ExperimentOutput o = it->second(ctx_);
        write_file(dir + "/" + o.id + ".csv", o.csv());
        write_file(dir + "/" + o.id + ".json", o.json());
        for (const auto& c : o.checks)
            out_ << (c.pass ? "PASS " : "FAIL ") << o.id << ": " << c.name << " = " << num(c.value) << " (" << c.relation
                 << " " << num(c.bound) << ")\n";
        return ok;
    }

    Flags f_;
    std::ostream& out_;
    std::ostream& err_;
    Context ctx_;
    std::optional<ExperimentConfig> cfg_;
};

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Power-free polynomial values: sieves, densities and ergodic averages along Omega(n)", "pfv"};
    app.require_subcommand(1);
    Flags f;

    auto common = [&f](CLI::App* s) {
        s->add_option("--threads", f.threads, "worker threads (default: hardware parallelism)");
        s->add_option("--segment", f.segment, "work-unit size in integers");
        s->add_option("--out", f.out, "output directory; writes <name>.csv and <name>.json");
        s->add_option("--format", f.format, "stdout format: csv or json");
        s->add_option("--config", f.config, "JSON config supplying defaults for unset flags");
        s->add_flag("--quiet", f.quiet, "suppress progress on stderr");
    };

    auto* sieve = app.add_subcommand("sieve", "dump n, Omega(n), mu(n), squarefree for n in [lo, lo + N)");
    sieve->add_option("--lo", f.lo, "first n (default 1)");
    sieve->add_option("--N", f.N, "number of entries")->required();
    common(sieve);

    auto* rho = app.add_subcommand("rho", "rho_f(p^k) for every prime p up to --primes");
    rho->add_option("--poly", f.poly, "ascending coefficients, e.g. 1,0,1")->required();
    rho->add_option("--k", f.k, "power k");
    rho->add_option("--primes", f.primes, "prime bound (default 100)");
    common(rho);

    auto* dens = app.add_subcommand("density", "Euler product with tail interval, as JSON");
    dens->add_option("--poly", f.poly, "ascending coefficients");
    dens->add_option("--k", f.k, "power k");
    dens->add_option("--P", f.P, "prime bound (default 100000)");
    dens->add_option("--constant", f.constant, "named constant instead of --poly: twin, estermann, bb");
    common(dens);

    auto* count = app.add_subcommand("count", "k-free value counts against density * N");
    count->add_option("--poly", f.poly, "ascending coefficients; factors joined by '*'");
    count->add_option("--k", f.k, "power k");
    count->add_option("--N", f.N, "limit");
    count->add_option("--checkpoints", f.checkpoints, "ascending comma list");
    count->add_option("--P", f.P, "prime bound for the density (default 1e6)");
    common(count);

    auto* ef = app.add_subcommand("eftail", "E_f(Y, N): pairs (d, n) with d > Y squarefree and d^k | f(n)");
    ef->add_option("--poly", f.poly, "ascending coefficients; factors joined by '*'");
    ef->add_option("--k", f.k, "power k");
    ef->add_option("--N", f.N, "limit");
    ef->add_option("--checkpoints", f.checkpoints, "ascending comma list of N values");
    ef->add_option("--Y", f.Y, "comma list of Y values");
    ef->add_option("--delta", f.delta, "use Y = floor(N^(1 - delta)) for each N");
    common(ef);

    auto* erg = app.add_subcommand("ergodic", "averages of g(T^Omega(a(n)) x) over selected n");
    erg->add_option("--system", f.system, "twopoint:..., cyclic:..., circle:...");
    erg->add_option("--condition", f.condition, "all, twin, kfree:<coeffs>:<k>, product:..., mask:...");
    erg->add_option("--argmap", f.argmap, "id, prog:m,r, beatty:...");
    erg->add_option("--N", f.N, "limit");
    erg->add_option("--checkpoints", f.checkpoints, "ascending comma list");
    erg->add_option("--P", f.P, "prime bound for the density target (default 1e6)");
    erg->add_option("--poly", f.poly, "unused; accepted for config compatibility");
    erg->add_option("--k", f.k, "unused; accepted for config compatibility");
    common(erg);

    auto* rep = app.add_subcommand("repro", "run a named experiment and write <id>.csv and <id>.json");
    rep->add_option("id", f.id, "pnt, carlitz, estermann, hb17, browning18, thm11, cor12, thm31, thm41, cor42, thm51, "
                                "prop21, cond31, intervals")
        ->required();
    common(rep);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "pfv: usage error: " << e.what() << "\n";
        return usage;
    }

    std::string sub = app.get_subcommands().front()->get_name();
    try {
        Runner r(f, out, err);
        return r.run(sub);
    } catch (const HypothesisError& e) {
        err << "pfv: hypothesis violated: " << e.what() << "\n";
        return hypothesis;
    } catch (const Error& e) {
        err << "pfv: " << (e.kind() == ErrorKind::capacity ? "capacity error: " : "error: ") << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "pfv: error: " << e.what() << "\n";
        return usage;
    }
}

}  // namespace pfv::cli
