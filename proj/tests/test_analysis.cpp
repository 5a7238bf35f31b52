#include "doctest.h"

#include "sgrid/analysis.hpp"
#include "sgrid/attacker.hpp"
#include "test_support.hpp"

using namespace sgrid;

TEST_CASE("prop1_factor") {
    const Instance mixed({{1, 1, 5, 1.0}, {2, 2, 4, 1.0}});  // l_max 4, l_min 2
    CHECK(overlap_ratio(mixed) == 3.0);
    CHECK(prop1_factor(mixed, 2.0).value == doctest::Approx(1.0 / 3));
    const Instance homogeneous({{1, 1, 4, 1.0}, {2, 3, 6, 2.0}});
    CHECK(prop1_factor(homogeneous, 2.0).value == doctest::Approx(0.5));
    CHECK(prop1_factor(mixed, 1.0).value == 1.0);
    CHECK(prop1_factor(Instance({{1, 1, 8, 1.0}, {2, 2, 4, 1.0}}), 3.0).value == doctest::Approx(1.0 / 25));

    const Bound degenerate = prop1_factor(Instance({{1, 2, 2, 1.0}, {2, 1, 3, 1.0}}), 2.0);
    CHECK(degenerate.degenerate);
    CHECK(degenerate.value == 0.0);
}

TEST_CASE("prop2_lower_bound") {
    CHECK(prop2_lower_bound(Instance({{1, 1, 2, 2.0}, {2, 2, 3, 2.0}}), 2.0).value == doctest::Approx(16.0 / 9));
    const Bound single = prop2_lower_bound(Instance({{1, 1, 2, 3.0}}), 2.0);
    CHECK(single.value == doctest::Approx(2.25));
    CHECK(single.value <= full_attack_dp(Instance({{1, 1, 2, 3.0}}), CostModel(2.0)).cost);
    CHECK(prop2_lower_bound(Instance({{1, 3, 3, 1.0}}), 2.0).degenerate);
    CHECK_THROWS_AS((void)prop2_lower_bound(Instance(), 2.0), InvalidInput);
    CHECK_THROWS_AS((void)prop2_lower_bound(Instance({{1, 1, 2, 3.0}}), 0.5), InvalidInput);
}

TEST_CASE("expected bound equals the bound of the regular instance") {
    for (std::size_t n : {1u, 2u, 50u, 100u}) {
        for (int l : {1, 3, 10, 40}) {
            std::vector<Job> jobs;
            for (std::size_t i = 0; i < n; ++i) {
                const Slot a = 1 + 5 * static_cast<Slot>(i);
                jobs.push_back({static_cast<JobId>(i + 1), a, a + l, 10.0});
            }
            CHECK(prop2_expected_bound(n, l, 10.0, 5.0, 2.0) ==
                  doctest::Approx(prop2_lower_bound(Instance(jobs), 2.0).value).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS((void)prop2_expected_bound(0, 3, 10.0, 5.0, 2.0), InvalidInput);
    CHECK_THROWS_AS((void)prop2_expected_bound(5, 0, 10.0, 5.0, 2.0), InvalidInput);
}

TEST_CASE("expected bound grows with l_min") {
    for (std::size_t n : {50u, 100u, 200u}) {
        double previous = 0.0;
        for (int l = 1; l <= 100; ++l) {
            const double v = prop2_expected_bound(n, l, 10.0, 5.0, 2.0);
            CHECK(v > previous);
            previous = v;
        }
    }
}

TEST_CASE("prop3_lower_bound") {
    CHECK(prop3_lower_bound(16.0, 0.5, 2.0) == doctest::Approx(2.0));
    CHECK(prop3_lower_bound(16.0, 1.0, 2.0) == 8.0);
    CHECK(prop3_lower_bound(16.0, 0.0, 2.0) == 0.0);
    CHECK_THROWS_AS((void)prop3_lower_bound(-1.0, 0.5, 2.0), InvalidInput);
}

TEST_CASE("bound report") {
    const Instance inst({{1, 1, 3, 2.0}, {2, 5, 6, 3.0}, {3, 9, 13, 1.0}});
    const BoundReport r = make_bound_report(inst, 2.0, 20.0, 0.5);
    CHECK(r.l_min == 1);
    CHECK(r.l_max == 4);
    CHECK(r.r_prop1 == 5.0);
    CHECK(r.prop1_factor == doctest::Approx(0.2));
    CHECK(r.r_prop2 == doctest::Approx(3.0 / 8));
    CHECK(r.arrival_span == 8);
    CHECK(r.total_energy == 6.0);
    CHECK(r.prop3_lower == doctest::Approx(2.5));
    CHECK_FALSE(r.degenerate);
}

TEST_CASE("bounds hold on random instances") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        testing::SmallSpec spec{1, 15, 40, 10};
        spec.min_window = 2;
        const Instance inst = testing::random_instance(rng, spec);
        for (double b : {1.0, 2.0, 3.0}) {
            const CostModel cost(b);
            const double c_max = full_attack_dp(inst, cost).cost;
            CHECK(testing::at_least(online_edf_attack(inst, cost).cost, prop1_factor(inst, b).value * c_max));
            CHECK(testing::at_least(c_max, prop2_lower_bound(inst, b).value));
        }
    }
}
