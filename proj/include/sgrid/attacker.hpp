#pragma once

#include <cstddef>
#include <vector>

#include "sgrid/exec.hpp"
#include "sgrid/model.hpp"

namespace sgrid {

struct FullAttack {
    AttackPlan plan;
    CliquePartition partition;
    double cost = 0.0;
};

/// Optimal full-compression attack: maximum over clique partitions of the
/// interval graph of sum_K C(sum_{j in K} e_j), by interval DP over the
/// endpoint set. Blocks are reported in slot order.
[[nodiscard]] FullAttack full_attack_dp(const Instance& instance, const CostModel& cost,
                                        Exec exec = Exec::Parallel);

/// Online attack: group every job released by the earliest pending deadline
/// into one block at that deadline, then repeat.
[[nodiscard]] FullAttack online_edf_attack(const Instance& instance, const CostModel& cost);

struct KnapsackItem {
    double value = 0.0;
    double weight = 1.0;
};

struct KnapsackResult {
    std::size_t chosen_count = 0;  // k whole items taken in `ordering`
    double fraction = 0.0;         // share of item k+1 the leftover budget covers
    double chosen_value = 0.0;     // value of the k whole items
    std::vector<std::size_t> ordering;  // input indices by value/weight, best first
};

/// Greedy fractional knapsack with capacity budget_fraction * sum(weights).
/// Items are ranked by value/weight, ties by larger value, then input order.
[[nodiscard]] KnapsackResult fractional_knapsack(const std::vector<KnapsackItem>& items, double budget_fraction);

struct LimitedAttack {
    AttackPlan plan;
    double cost = 0.0;       // conservative value: compressed components only
    double whole_cliques = 0.0;  // C1
    double partial_clique = 0.0; // C2
    int budget = 0;
};

/// Budget-limited greedy attack. Takes the optimal full-attack partition,
/// compresses whole cliques chosen by fractional knapsack on (C(E_i), N_i),
/// or alternatively the highest-energy jobs of the next clique, whichever
/// scores higher. Budget is floor(beta * n).
[[nodiscard]] LimitedAttack limited_greedy_attack(const Instance& instance, double beta, const CostModel& cost);

/// Same, reusing an already computed full attack of `instance`.
[[nodiscard]] LimitedAttack limited_greedy_attack(const Instance& instance, const FullAttack& full, double beta,
                                                  const CostModel& cost);

/// C_min of the attacked instance under the optimal controller.
[[nodiscard]] double realized_attack_cost(const Instance& instance, const AttackPlan& plan, const CostModel& cost);

/// Upper-bound estimate of the budget-limited attack against a controller
/// that serves every demand at its (possibly altered) arrival. Requires
/// distinct arrival slots.
[[nodiscard]] double limited_attack_dp(const Instance& instance, double beta, const CostModel& cost,
                                       Exec exec = Exec::Parallel);

/// limited_attack_dp for every budget 0..max_budget in one table sweep.
[[nodiscard]] std::vector<double> limited_attack_dp_curve(const Instance& instance, int max_budget,
                                                          const CostModel& cost, Exec exec = Exec::Parallel);

}  // namespace sgrid
