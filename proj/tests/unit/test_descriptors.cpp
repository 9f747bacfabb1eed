#include <gtest/gtest.h>

#include <random>

#include "pfv/descriptors.hpp"

using namespace pfv;

TEST(Descriptors, CanonicalStringsRoundTrip) {
    for (const char* s : {"twopoint:1,-1,0", "twopoint:0.5,-0.25,1", "cyclic:3,1,g=1;0;0", "cyclic:1,0,g=2.5",
                          "circle:alpha=golden,x=0.3,g=1+cos1", "circle:alpha=0.4142135623730951,x=0,g=0-0.5sin2",
                          "circle:alpha=golden,x=0.999,g=0.25+2cos1-sin1+cos7"})
        EXPECT_EQ(print_system(parse_system(s)), s);
    for (const char* s : {"all", "twin", "kfree:1,0,1:2", "kfree:2,0,0,1:3", "product:1,0,1*2,0,1:2", "mask:full",
                          "mask:empty", "mask:@/tmp/m.txt"})
        EXPECT_EQ(print_condition(parse_condition(s)), s);
    for (const char* s : {"id", "prog:3,2", "beatty:3/2,1/2", "beatty:7/3,-2/3", "beatty:1.4142135623730951,0.25"})
        EXPECT_EQ(print_argmap(parse_argmap(s)), s);
}

TEST(Descriptors, ParsedValues) {
    auto s = parse_system("circle:alpha=golden,x=0.3,g=1+cos1-0.5sin2");
    EXPECT_DOUBLE_EQ(std::get<CircleRotation>(s.system).alpha, golden_alpha());
    const auto& g = std::get<TrigObservable>(s.observable);
    EXPECT_EQ(g.a0, 1);
    ASSERT_EQ(g.terms.size(), 2u);
    EXPECT_EQ(g.terms[0], (TrigTerm{1, 1, 0}));
    EXPECT_EQ(g.terms[1], (TrigTerm{2, 0, -0.5}));
    EXPECT_EQ(std::get<double>(s.x), 0.3);
    auto c = std::get<ProductPoly>(parse_condition("product:1,0,1*2,0,1:2"));
    EXPECT_EQ(c.factors.size(), 2u);
    EXPECT_EQ(c.factors[1], IntPolynomial({2, 0, 1}));
    EXPECT_EQ(std::get<BeattyRational>(parse_argmap("beatty:7/3,-2/3")), (BeattyRational{7, -2, 3}));
    // Exponent signs inside a coefficient are not term separators.
    auto e = std::get<TrigObservable>(parse_system("circle:alpha=0.5,x=0,g=1e-3+2e+1cos3").observable);
    EXPECT_EQ(e.a0, 1e-3);
    EXPECT_EQ(e.terms[0], (TrigTerm{3, 20, 0}));
}

TEST(Descriptors, RandomObjectsRoundTrip) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 500; ++i) {
        SystemSpec s;
        switch (rng() % 3) {
            case 0: s = {TwoPoint{}, PairObservable{u(rng), u(rng)}, u64{rng() % 2}}; break;
            case 1: {
                u64 m = 1 + rng() % 6;
                VectorObservable v;
                for (u64 j = 0; j < m; ++j) v.values.push_back(u(rng));
                s = {CyclicRotation{m}, v, u64{rng() % m}};
                break;
            }
            default: {
                TrigObservable g{u(rng), {}};
                for (unsigned h = 1; h <= rng() % 4; ++h) g.terms.push_back({h, u(rng), u(rng)});
                double a = std::abs(u(rng)) / 3.0;
                if (a == 0 || a >= 1) a = 0.5;
                s = {CircleRotation{a, false}, g, std::abs(u(rng)) / 3.01};
            }
        }
        auto t = parse_system(print_system(s));
        ASSERT_EQ(t.observable, s.observable) << print_system(s);
        ASSERT_EQ(t.x, s.x);
        ASSERT_EQ(print_system(t), print_system(s));
        ArgumentMap m = (rng() % 2) ? ArgumentMap{ProgressionMap{1 + rng() % 9, 0}}
                                    : ArgumentMap{BeattyReal{0.5 + std::abs(u(rng)), 0.6 + std::abs(u(rng)) / 10}};
        ASSERT_EQ(parse_argmap(print_argmap(m)), m);
    }
}

TEST(Descriptors, Errors) {
    for (const char* s : {"", "twopoint:1,-1", "twopoint:1,-1,2", "cyclic:3,0,g=1;2", "cyclic:0,0,g=", "circle:x=0",
                          "circle:alpha=golden,x=1,g=1", "circle:alpha=golden,x=0,g=cos1+1", "circle:alpha=2,x=0,g=1",
                          "orbit:1"})
        EXPECT_THROW(parse_system(s), UsageError) << s;
    for (const char* s : {"", "kfree:1,0,1", "kfree:1,0,1:1", "kfree:1,0,0:2", "product::2", "mask:", "mask:@", "foo"})
        EXPECT_THROW(parse_condition(s), UsageError) << s;
    for (const char* s : {"", "prog:3", "prog:3,3", "beatty:1/2,1/3", "beatty:1/1,0/1", "beatty:-1,3", "beatty:x,1"})
        EXPECT_THROW(parse_argmap(s), UsageError) << s;
}

TEST(Config, JsonRoundTrip) {
    ExperimentConfig c;
    c.name = "thm11";
    c.coeffs = {1, 0, 1};
    c.k = 2;
    c.N = 10'000'000;
    c.checkpoints = {100'000, 1'000'000, 10'000'000};
    c.system = "circle:alpha=golden,x=0.3,g=1+cos1";
    c.condition = "kfree:1,0,1:2";
    c.argmap = "id";
    c.P = 1'000'000;
    c.out = "results";
    EXPECT_EQ(parse_config(to_json(c).dump()), c);

    c.coeffs = {BigInt("-123456789012345678901234567890"), 0, 1};
    auto j = to_json(c);
    EXPECT_TRUE(j["coeffs"][0].is_string());
    EXPECT_EQ(parse_config(j.dump()), c);

    auto keys = std::vector<std::string>{};
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"name", "coeffs", "k", "N", "checkpoints", "system", "condition",
                                              "argmap", "P", "out"}));
}

TEST(Config, Errors) {
    EXPECT_THROW(parse_config("{"), UsageError);
    EXPECT_THROW(parse_config("[]"), UsageError);
    EXPECT_THROW(parse_config(R"({"name": "x", "colour": 1})"), UsageError);
    EXPECT_THROW(parse_config(R"({"k": "two"})"), UsageError);
    EXPECT_THROW(parse_config(R"({"checkpoints": [10, 10]})"), UsageError);
    EXPECT_THROW(parse_config(R"({"coeffs": [1.5, 1]})"), UsageError);
    auto d = parse_config("{}");
    EXPECT_EQ(d.P, 1'000'000u);
    EXPECT_EQ(d.k, 2u);
}
