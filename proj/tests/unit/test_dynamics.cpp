#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pfv/arith_sieve.hpp"
#include "pfv/dynamics.hpp"

using namespace pfv;

TEST(Dynamics, Means) {
    EXPECT_EQ(mean(PairObservable{1, -1}), 0);
    EXPECT_EQ(mean(VectorObservable{{2, 4, 6}}), 4);
    EXPECT_EQ(mean(TrigObservable{1, {{1, 1, 0}}}), 1);
    EXPECT_THROW(mean(VectorObservable{}), UsageError);
}

TEST(Dynamics, TwoPointTable) {
    auto t = orbit_table(TwoPoint{}, PairObservable{1, -1}, u64{0}, 10);
    ASSERT_EQ(t.values.size(), 11u);
    for (unsigned j = 0; j <= 10; ++j) EXPECT_EQ(t.values[j], (j % 2) ? -1 : 1);
    EXPECT_EQ(t.mean, 0);
    auto s = orbit_table(TwoPoint{}, PairObservable{1, -1}, u64{1}, 3);
    EXPECT_EQ(s.values[0], -1);
}

TEST(Dynamics, CyclicTable) {
    auto t = orbit_table(CyclicRotation{3}, indicator(3, 0), u64{0}, 8);
    EXPECT_EQ(t.values, (std::vector<double>{1, 0, 0, 1, 0, 0, 1, 0, 0}));
    EXPECT_DOUBLE_EQ(t.mean, 1.0 / 3.0);
}

TEST(Dynamics, CircleTable) {
    const double a = golden_alpha();
    TrigObservable g{0, {{1, 1, 0}}};
    auto t = orbit_table(CircleRotation{a, true}, g, 0.0, 128);
    for (unsigned j = 0; j <= 128; ++j) EXPECT_NEAR(t.values[j], std::cos(2 * std::numbers::pi * j * a), 1e-12);
    EXPECT_EQ(t.mean, 0);
}

TEST(Dynamics, ClosedFormMatchesIteration) {
    std::vector<std::tuple<System, Observable, Point>> cases = {
        {TwoPoint{}, PairObservable{0.25, 3}, u64{1}},
        {CyclicRotation{5}, VectorObservable{{1, 2, 3, 4, 5}}, u64{3}},
        {CircleRotation{golden_alpha(), true}, TrigObservable{1, {{1, 1, 0}, {2, 0, -0.5}, {7, 0.3, 0.2}}}, 0.3},
        {CircleRotation{std::sqrt(2.0) - 1, false}, TrigObservable{0, {{3, 0, 1}}}, 0.999},
    };
    for (const auto& [s, g, x] : cases) {
        auto a = orbit_table(s, g, x, 128);
        auto b = orbit_table_iterated(s, g, x, 128);
        for (unsigned j = 0; j <= 128; ++j) ASSERT_NEAR(a.values[j], b.values[j], 1e-12) << describe(s) << " j=" << j;
    }
}

TEST(Dynamics, CyclicMeanIsRotationInvariant) {
    VectorObservable g{{0.5, -2, 7, 1.25}};
    VectorObservable shifted{{-2, 7, 1.25, 0.5}};  // g o T
    EXPECT_EQ(mean(g), mean(shifted));
}

TEST(Dynamics, TwoPointReproducesLiouville) {
    auto t = orbit_table(TwoPoint{}, PairObservable{1, -1}, u64{0}, 20);
    auto tab = build_tables(1, 10'001);
    for (u64 n = 1; n <= 10'000; ++n) ASSERT_EQ(t.values[static_cast<std::size_t>(tab.omega(n))], tab.liouville(n));
}

TEST(Dynamics, Errors) {
    EXPECT_THROW(orbit_table(TwoPoint{}, PairObservable{1, -1}, u64{2}, 5), UsageError);
    EXPECT_THROW(orbit_table(TwoPoint{}, PairObservable{1, -1}, 0.5, 5), UsageError);
    EXPECT_THROW(orbit_table(CyclicRotation{3}, VectorObservable{{1, 2}}, u64{0}, 5), UsageError);
    EXPECT_THROW(orbit_table(CircleRotation{0.5, false}, TrigObservable{}, 1.0, 5), UsageError);
    EXPECT_THROW(orbit_table(CircleRotation{1.5, false}, TrigObservable{}, 0.0, 5), UsageError);
    EXPECT_THROW(orbit_table(TwoPoint{}, VectorObservable{{1, 2}}, u64{0}, 5), UsageError);
    EXPECT_THROW(orbit_table(TwoPoint{}, PairObservable{1, -1}, u64{0}, 129), UsageError);
}

TEST(Dynamics, DefaultDepthCoversOmega) {
    EXPECT_EQ(default_orbit_depth(1), 1u);
    EXPECT_EQ(default_orbit_depth(2), 2u);
    EXPECT_EQ(default_orbit_depth(1024), 11u);
    EXPECT_EQ(default_orbit_depth(~u64{0}), 64u);
}
