#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using namespace pfv;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    if (!args.empty() && args[0][0] != '-') args.push_back("--quiet");
    int c = cli::run_cli(args, o, e);
    return {c, o.str(), e.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> r;
        for (auto t : detail::split(line, ',')) r.emplace_back(t);
        rows.push_back(r);
    }
    return rows;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"density", "--poly", "1,0"}).code, 2);
    EXPECT_EQ(run({"density", "--poly", "1,0,1", "--k", "1"}).code, 2);
    EXPECT_EQ(run({"count", "--poly", "1,0,1", "--N", "abc"}).code, 2);
    EXPECT_EQ(run({"ergodic", "--system", "twopoint:1,-1,0", "--N", "100", "--threads", "0"}).code, 2);
    EXPECT_EQ(run({"repro", "nope"}).code, 2);
    auto h = run({"count", "--poly", "4,4", "--k", "2", "--N", "100"});
    EXPECT_EQ(h.code, 4);
    EXPECT_NE(h.err.find("fixed k-th power divisor"), std::string::npos) << h.err;
    EXPECT_EQ(run({"count", "--poly", "1,2,1", "--k", "2", "--N", "100"}).code, 4);
    EXPECT_EQ(run({"sieve", "--lo", "1", "--N", "1e13"}).code, 3);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Sieve) {
    auto r = run({"sieve", "--N", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 13u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "omega", "mobius", "squarefree"}));
    EXPECT_EQ(rows[12], (std::vector<std::string>{"12", "3", "0", "0"}));
    EXPECT_EQ(rows[6], (std::vector<std::string>{"6", "2", "1", "1"}));
}

TEST(Cli, RhoMarksPrimesOneModFour) {
    auto r = run({"rho", "--poly", "1,0,1", "--k", "2", "--primes", "50"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "k", "rho", "is_bad"}));
    std::vector<u64> two;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][2] == "2") two.push_back(std::stoull(rows[i][0]));
        else EXPECT_EQ(rows[i][2], "0");
    }
    EXPECT_EQ(two, (std::vector<u64>{5, 13, 17, 29, 37, 41}));
    EXPECT_EQ(rows[1], (std::vector<std::string>{"2", "2", "0", "1"}));
}

TEST(Cli, DensityJson) {
    auto r = run({"density", "--poly", "1,0,1", "--k", "2", "--P", "100000"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"value", "lower", "upper", "P", "bad_primes", "k", "coeffs"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_NEAR(j["value"].get<double>(), 0.8948, 5e-5);
    EXPECT_EQ(j["bad_primes"], nlohmann::json::array({2}));
    auto t = nlohmann::json::parse(run({"density", "--constant", "twin", "--P", "1e6"}).out);
    EXPECT_NEAR(t["value"].get<double>(), 0.32263, 5e-6);
}

TEST(Cli, CountAndEftail) {
    auto r = run({"count", "--poly", "1,0,1", "--k", "2", "--checkpoints", "100,1000", "--P", "1000"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"N", "count", "target", "abs_error", "rel_error"}));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[2][0], "1000");
    auto mask = kfree_mask(IntPolynomial({1, 0, 1}), 2, 1000);
    EXPECT_EQ(rows[2][1], std::to_string(mask.count()));

    auto j = nlohmann::json::parse(run({"count", "--poly", "1,0,1*2,0,1", "--N", "1000", "--format", "json"}).out);
    EXPECT_EQ(j["factors"], "1,0,1*2,0,1");
    EXPECT_EQ(j["rows"][0]["count"].get<u64>(), kfree_mask({IntPolynomial({1, 0, 1}), IntPolynomial({2, 0, 1})}, 2, 1000).count());

    auto e = run({"eftail", "--poly", "0,1", "--k", "2", "--N", "10", "--Y", "1,2"});
    ASSERT_EQ(e.code, 0) << e.err;
    auto er = csv_rows(e.out);
    EXPECT_EQ(er[0], (std::vector<std::string>{"N", "Y", "E_f"}));
    EXPECT_EQ(er[1], (std::vector<std::string>{"10", "1", "3"}));
    EXPECT_EQ(er[2], (std::vector<std::string>{"10", "2", "1"}));
    EXPECT_EQ(run({"eftail", "--poly", "0,1", "--N", "10"}).code, 2);
    EXPECT_EQ(run({"eftail", "--poly", "1,0,1", "--checkpoints", "100,1000", "--delta", "0.1"}).code, 0);
}

TEST(Cli, ErgodicAndConfig) {
    auto r = run({"ergodic", "--system", "twopoint:1,-1,0", "--checkpoints", "10,100"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"N", "selected", "average", "target", "residual"}));
    EXPECT_EQ(rows[1][2], "0");

    const auto dir = std::filesystem::path(::testing::TempDir()) / "pfv_cli_cfg";
    std::filesystem::create_directories(dir);
    ExperimentConfig c;
    c.name = "demo";
    c.checkpoints = {1000, 5000};
    c.system = "cyclic:3,0,g=1;0;0";
    c.condition = "kfree:1,0,1:2";
    c.argmap = "prog:3,1";
    c.P = 10'000;
    c.out = (dir / "out").string();
    std::ofstream((dir / "cfg.json").string()) << to_json(c).dump(2);
    auto a = run({"ergodic", "--config", (dir / "cfg.json").string()});
    ASSERT_EQ(a.code, 0) << a.err;
    auto meta = nlohmann::json::parse(slurp((dir / "out" / "demo.json").string()));
    EXPECT_EQ(meta["config"]["argmap"], "prog:3,1");
    EXPECT_EQ(meta["config"]["condition"], "kfree:1,0,1:2");
    auto csv = csv_rows(slurp((dir / "out" / "demo.csv").string()));
    ASSERT_EQ(csv.size(), 3u);
    EXPECT_EQ(csv[2][0], "5000");
    std::filesystem::remove_all(dir);
}

TEST(Cli, OutputIndependentOfThreads) {
    std::vector<std::string> base = {"ergodic", "--system", "circle:alpha=golden,x=0.3,g=1+cos1", "--condition",
                                     "kfree:1,0,1:2", "--argmap", "beatty:1.5,0.25", "--checkpoints", "1000,30000",
                                     "--P", "10000", "--format", "json"};
    auto a = base, b = base;
    a.insert(a.end(), {"--threads", "1", "--segment", "1024"});
    b.insert(b.end(), {"--threads", "8", "--segment", "65536"});
    EXPECT_EQ(run(a).out, run(b).out);
}

TEST(Cli, ReproWritesFiles) {
    const auto dir = std::filesystem::path(::testing::TempDir()) / "pfv_cli_repro";
    auto r = run({"repro", "cond31", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(slurp((dir / "cond31.csv").string()));
    EXPECT_EQ(rows[0], (std::vector<std::string>{"N", "Y", "E_f"}));
    auto j = nlohmann::json::parse(slurp((dir / "cond31.json").string()));
    EXPECT_EQ(j["experiment"], "cond31");
    EXPECT_TRUE(j["passed"].get<bool>());
    std::filesystem::remove_all(dir);
}
