#include "doctest.h"

#include "sgrid/attacker.hpp"
#include "sgrid/harness.hpp"
#include "sgrid/oracle.hpp"
#include "sgrid/scheduler.hpp"
#include "test_support.hpp"

using namespace sgrid;

namespace {

Instance two_jobs() { return Instance({{1, 1, 2, 2.0}, {2, 2, 3, 2.0}}); }

double partition_cost(const Instance& inst, const CliquePartition& p, const CostModel& cost) {
    double total = 0.0;
    for (const auto& block : p.blocks) {
        double e = 0.0;
        for (JobId id : block.members) e += inst[inst.index_of(id)].energy;
        total += cost(e);
    }
    return total;
}

}  // namespace

TEST_CASE("full_attack_dp examples") {
    const CostModel c2(2.0);
    SUBCASE("two jobs merge at slot 2") {
        const FullAttack fa = full_attack_dp(two_jobs(), c2);
        CHECK(fa.cost == 16.0);
        REQUIRE(fa.partition.blocks.size() == 1);
        CHECK(fa.partition.blocks[0].slot == 2);
        CHECK(fa.partition.blocks[0].members == std::vector<JobId>{1, 2});
        CHECK(fa.plan.compressed == std::map<JobId, Slot>{{1, 2}, {2, 2}});
        CHECK(brute_force_pmax(two_jobs(), c2) == 16.0);
    }
    SUBCASE("single job") { CHECK(full_attack_dp(Instance({{1, 1, 5, 3.0}}), c2).cost == 9.0); }
    SUBCASE("disjoint jobs stay apart") {
        const FullAttack fa = full_attack_dp(Instance({{1, 1, 1, 3.0}, {2, 10, 10, 1.0}}), c2);
        CHECK(fa.cost == 10.0);
        CHECK(fa.partition.blocks.size() == 2);
    }
    SUBCASE("empty") { CHECK(full_attack_dp(Instance(), c2).cost == 0.0); }
}

TEST_CASE("full_attack_dp matches brute force and is self-consistent") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        const Instance inst = testing::random_instance(rng, {1, 7, 8, 5});
        const CostModel cost(1.0 + 0.5 * (trial % 5));
        const FullAttack serial = full_attack_dp(inst, cost, Exec::Serial);
        const FullAttack parallel = full_attack_dp(inst, cost, Exec::Parallel);
        CHECK(serial.cost == parallel.cost);
        CHECK(serial.cost == doctest::Approx(brute_force_pmax(inst, cost)).epsilon(1e-12));
        CHECK_NOTHROW(validate_partition(inst, serial.partition));
        CHECK(partition_cost(inst, serial.partition, cost) == doctest::Approx(serial.cost).epsilon(1e-12));
        CHECK(realized_attack_cost(inst, serial.plan, cost) == doctest::Approx(serial.cost).epsilon(1e-12));
    }
}

TEST_CASE("online_edf_attack") {
    const CostModel c2(2.0);
    SUBCASE("two jobs") {
        const FullAttack fa = online_edf_attack(two_jobs(), c2);
        CHECK(fa.cost == 16.0);
        REQUIRE(fa.partition.blocks.size() == 1);
        CHECK(fa.partition.blocks[0].slot == 2);
    }
    SUBCASE("three jobs in two blocks") {
        const Instance inst({{1, 1, 2, 1.0}, {2, 2, 4, 1.0}, {3, 3, 5, 1.0}});
        const FullAttack fa = online_edf_attack(inst, c2);
        CHECK(fa.cost == 5.0);
        REQUIRE(fa.partition.blocks.size() == 2);
        CHECK(fa.partition.blocks[0].slot == 2);
        CHECK(fa.partition.blocks[0].members == std::vector<JobId>{1, 2});
        CHECK(fa.partition.blocks[1].slot == 5);
        CHECK(fa.partition.blocks[1].members == std::vector<JobId>{3});
    }
    SUBCASE("single job sits at its deadline") {
        const FullAttack fa = online_edf_attack(Instance({{4, 2, 7, 1.0}}), c2);
        CHECK(fa.plan.compressed.at(4) == 7);
    }
    SUBCASE("never exceeds the optimal attack") {
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 200; ++trial) {
            const Instance inst = testing::random_instance(rng, {1, 12, 20, 8});
            const FullAttack online = online_edf_attack(inst, c2);
            CHECK_NOTHROW(validate_partition(inst, online.partition));
            CHECK(online.cost <= full_attack_dp(inst, c2).cost * (1 + 1e-12));
        }
    }
}

TEST_CASE("fractional_knapsack") {
    SUBCASE("hand example") {
        const auto r = fractional_knapsack({{6, 2}, {5, 1}, {4, 4}}, 0.5);
        CHECK(r.ordering == std::vector<std::size_t>{1, 0, 2});
        CHECK(r.chosen_count == 2);
        CHECK(r.fraction == doctest::Approx(0.125));
        CHECK(r.chosen_value == 11.0);
    }
    SUBCASE("full and empty budgets") {
        const std::vector<KnapsackItem> items{{6, 2}, {5, 1}, {4, 4}};
        const auto full = fractional_knapsack(items, 1.0);
        CHECK(full.chosen_count == 3);
        CHECK(full.fraction == 0.0);
        CHECK(full.chosen_value == 15.0);
        const auto none = fractional_knapsack(items, 0.0);
        CHECK(none.chosen_count == 0);
        CHECK(none.fraction == 0.0);
    }
    SUBCASE("ratio ties prefer larger value then input order") {
        const auto r = fractional_knapsack({{1, 1}, {2, 2}, {2, 2}}, 0.5);
        CHECK(r.ordering == std::vector<std::size_t>{1, 2, 0});
    }
    SUBCASE("rejects bad input") {
        CHECK_THROWS_AS((void)fractional_knapsack({}, 0.5), InvalidInput);
        CHECK_THROWS_AS((void)fractional_knapsack({{1, 0}}, 0.5), InvalidInput);
        CHECK_THROWS_AS((void)fractional_knapsack({{1, 1}}, 1.5), InvalidInput);
    }
    SUBCASE("greedy selection covers its budget share of value") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.1, 10.0);
        for (int trial = 0; trial < 300; ++trial) {
            std::vector<KnapsackItem> items(1 + rng() % 8);
            double total_w = 0.0, total_v = 0.0;
            for (auto& it : items) {
                it = {u(rng), u(rng)};
                total_w += it.weight;
                total_v += it.value;
            }
            const double beta = static_cast<double>(rng() % 101) / 100.0;
            const auto r = fractional_knapsack(items, beta);
            double w = 0.0;
            for (std::size_t i = 0; i < r.chosen_count; ++i) w += items[r.ordering[i]].weight;
            CHECK(w <= beta * total_w * (1 + 1e-12));
            if (r.chosen_count < items.size()) {
                CHECK(w + items[r.ordering[r.chosen_count]].weight > beta * total_w);
                CHECK(r.chosen_value + r.fraction * items[r.ordering[r.chosen_count]].value >=
                      beta * total_v * (1 - 1e-12));
            }
        }
    }
}

TEST_CASE("limited_greedy_attack examples") {
    const CostModel c2(2.0);
    SUBCASE("half budget on two jobs") {
        const LimitedAttack la = limited_greedy_attack(two_jobs(), 0.5, c2);
        CHECK(la.budget == 1);
        CHECK(la.whole_cliques == 0.0);
        CHECK(la.partial_clique == 4.0);
        CHECK(la.cost == 4.0);
        CHECK(la.plan.compressed.size() == 1);
        CHECK(realized_attack_cost(two_jobs(), la.plan, c2) >= la.cost);
    }
    SUBCASE("full budget reaches C_max") {
        CHECK(limited_greedy_attack(two_jobs(), 1.0, c2).cost == 16.0);
    }
    SUBCASE("identical overlapping jobs give beta^2 of the maximum") {
        const Instance inst = make_identical_instance(50, 5.0, 50, 1);
        const FullAttack full = full_attack_dp(inst, c2);
        CHECK(full.cost == 62500.0);
        for (int budget = 1; budget <= 50; ++budget) {
            const double beta = budget / 50.0;
            const LimitedAttack la = limited_greedy_attack(inst, full, beta, c2);
            CHECK(la.cost == doctest::Approx((5.0 * budget) * (5.0 * budget)));
            CHECK(la.cost / full.cost == doctest::Approx(beta * beta).epsilon(1e-12));
        }
    }
    SUBCASE("rejects beta outside [0, 1]") {
        CHECK_THROWS_AS((void)limited_greedy_attack(two_jobs(), -0.1, c2), InvalidInput);
        CHECK_THROWS_AS((void)limited_greedy_attack(two_jobs(), 1.1, c2), InvalidInput);
    }
}

TEST_CASE("limited_greedy_attack properties") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        const Instance inst = testing::random_instance(rng, {1, 10, 15, 6});
        const CostModel cost(1.0 + (trial % 3));
        const FullAttack full = full_attack_dp(inst, cost);
        double previous = 0.0;
        const auto n = inst.size();
        for (std::size_t k = 0; k <= n; ++k) {
            const double beta = static_cast<double>(k) / static_cast<double>(n);
            const LimitedAttack la = limited_greedy_attack(inst, full, beta, cost);
            CHECK(la.cost >= previous);
            previous = la.cost;
            CHECK(la.plan.altered(inst).size() <= static_cast<std::size_t>(la.budget));
            CHECK_NOTHROW(validate_plan(inst, la.plan));
            CHECK(testing::at_least(realized_attack_cost(inst, la.plan, cost), la.cost));
        }
        CHECK(limited_greedy_attack(inst, full, 1.0, cost).cost == full.cost);
    }
}

TEST_CASE("realized_attack_cost") {
    const CostModel c2(2.0);
    // oracle: controller splits j2 as (2 - x) at slot 2 and x at slot 3
    double best = 1e9;
    for (int i = 0; i <= 2000; ++i) {
        const double x = 2.0 * i / 2000;
        best = std::min(best, (4 - x) * (4 - x) + x * x);
    }
    const double realized = realized_attack_cost(two_jobs(), AttackPlan{{{1, 2}}}, c2);
    CHECK(realized == doctest::Approx(8.0));
    CHECK(best == doctest::Approx(8.0));
    CHECK(realized_attack_cost(two_jobs(), AttackPlan{}, c2) == doctest::Approx(16.0 / 3));
    CHECK(realized_attack_cost(two_jobs(), full_attack_dp(two_jobs(), c2).plan, c2) == 16.0);
    CHECK_THROWS_AS((void)realized_attack_cost(two_jobs(), AttackPlan{{{2, 1}}}, c2), InvalidInput);
}

TEST_CASE("limited_attack_dp") {
    const CostModel c2(2.0);
    SUBCASE("half budget on two jobs") { CHECK(limited_attack_dp(two_jobs(), 0.5, c2) == 16.0); }
    SUBCASE("zero budget is the baseline cost") {
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 50; ++trial) {
            testing::SmallSpec spec{1, 8, 12, 5};
            spec.distinct_arrivals = true;
            const Instance inst = testing::random_instance(rng, spec);
            CHECK(limited_attack_dp(inst, 0.0, c2) == doctest::Approx(baseline_cost(inst, c2)).epsilon(1e-12));
        }
    }
    SUBCASE("full budget dominates the optimal full attack") {
        std::mt19937_64 rng(6);
        for (int trial = 0; trial < 50; ++trial) {
            testing::SmallSpec spec{1, 8, 12, 5};
            spec.distinct_arrivals = true;
            const Instance inst = testing::random_instance(rng, spec);
            CHECK(testing::at_least(limited_attack_dp(inst, 1.0, c2), full_attack_dp(inst, c2).cost));
        }
    }
    SUBCASE("simultaneous arrivals are rejected") {
        CHECK_THROWS_AS((void)limited_attack_dp(Instance({{1, 1, 2, 1.0}, {2, 1, 3, 1.0}}), 0.5, c2), InvalidInput);
    }
    SUBCASE("curve is non-decreasing, bounds the greedy value, serial equals parallel") {
        std::mt19937_64 rng(12);
        for (int trial = 0; trial < 40; ++trial) {
            testing::SmallSpec spec{2, 14, 25, 10};
            spec.distinct_arrivals = true;
            const Instance inst = testing::random_instance(rng, spec);
            const int n = static_cast<int>(inst.size());
            const auto serial = limited_attack_dp_curve(inst, n, c2, Exec::Serial);
            const auto parallel = limited_attack_dp_curve(inst, n, c2, Exec::Parallel);
            CHECK(serial == parallel);
            const FullAttack full = full_attack_dp(inst, c2);
            for (int k = 0; k <= n; ++k) {
                if (k > 0) CHECK(serial[static_cast<std::size_t>(k)] >= serial[static_cast<std::size_t>(k - 1)]);
                const double beta = static_cast<double>(k) / n;
                CHECK(serial[static_cast<std::size_t>(k)] == limited_attack_dp(inst, beta, c2, Exec::Serial));
                CHECK(testing::at_least(serial[static_cast<std::size_t>(k)],
                                        limited_greedy_attack(inst, full, beta, c2).cost));
            }
        }
    }
}
