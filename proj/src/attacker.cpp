#include "sgrid/attacker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sgrid/scheduler.hpp"

namespace sgrid {

namespace {

/// Jobs mapped onto indices of the endpoint set, with 2-D prefix sums over
/// (arrival index, deadline index) for O(1) clique and containment queries.
class EndpointGrid {
public:
    explicit EndpointGrid(const Instance& instance) : x_(instance.endpoints()) {
        const std::size_t q = x_.size();
        count_.assign((q + 1) * (q + 1), 0);
        energy_.assign((q + 1) * (q + 1), 0.0);
        for (const auto& job : instance.jobs()) {
            const std::size_t a = index(job.arrival);
            const std::size_t d = index(job.deadline);
            arrival_index_.push_back(a);
            deadline_index_.push_back(d);
            count_[(a + 1) * (q + 1) + d + 1] += 1;
            energy_[(a + 1) * (q + 1) + d + 1] += job.energy;
        }
        for (std::size_t a = 1; a <= q; ++a)
            for (std::size_t d = 1; d <= q; ++d) {
                const std::size_t c = a * (q + 1) + d;
                count_[c] += count_[c - 1] + count_[c - q - 1] - count_[c - q - 2];
                energy_[c] += energy_[c - 1] + energy_[c - q - 1] - energy_[c - q - 2];
            }
    }

    [[nodiscard]] std::size_t size() const { return x_.size(); }
    [[nodiscard]] Slot slot(std::size_t i) const { return x_[i]; }
    [[nodiscard]] std::size_t arrival_index(std::size_t job) const { return arrival_index_[job]; }
    [[nodiscard]] std::size_t deadline_index(std::size_t job) const { return deadline_index_[job]; }

    /// Jobs with arrival index in [a0, a1] and deadline index in [d0, d1].
    [[nodiscard]] int count(std::size_t a0, std::size_t a1, std::size_t d0, std::size_t d1) const {
        return rect(count_, a0, a1, d0, d1);
    }
    [[nodiscard]] double energy(std::size_t a0, std::size_t a1, std::size_t d0, std::size_t d1) const {
        if (count(a0, a1, d0, d1) == 0) return 0.0;
        return std::max(0.0, rect(energy_, a0, a1, d0, d1));
    }

private:
    [[nodiscard]] std::size_t index(Slot t) const {
        return static_cast<std::size_t>(std::lower_bound(x_.begin(), x_.end(), t) - x_.begin());
    }

    template <typename T>
    [[nodiscard]] T rect(const std::vector<T>& p, std::size_t a0, std::size_t a1, std::size_t d0,
                         std::size_t d1) const {
        const std::size_t w = x_.size() + 1;
        return p[(a1 + 1) * w + d1 + 1] - p[a0 * w + d1 + 1] - p[(a1 + 1) * w + d0] + p[a0 * w + d0];
    }

    std::vector<Slot> x_;
    std::vector<std::size_t> arrival_index_;
    std::vector<std::size_t> deadline_index_;
    std::vector<int> count_;
    std::vector<double> energy_;
};

}  // namespace

FullAttack full_attack_dp(const Instance& instance, const CostModel& cost, Exec exec) {
    FullAttack result;
    if (instance.empty()) return result;

    const EndpointGrid grid(instance);
    const std::size_t q = grid.size();
    std::vector<double> best(q * q, 0.0);
    std::vector<long> split(q * q, -1);
    auto value = [&](long i, long j) { return i > j ? 0.0 : best[static_cast<std::size_t>(i) * q + j]; };

    for (std::size_t width = 0; width < q; ++width) {
        const long last = static_cast<long>(q - width);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
        for (long i = 0; i < last; ++i) {
            const std::size_t lo = static_cast<std::size_t>(i);
            const std::size_t hi = lo + width;
            if (grid.count(lo, hi, lo, hi) == 0) continue;
            double top = -1.0;
            long arg = -1;
            for (std::size_t z = lo; z <= hi; ++z) {
                const double v = cost(grid.energy(lo, z, z, hi)) + value(i, static_cast<long>(z) - 1) +
                                 value(static_cast<long>(z) + 1, static_cast<long>(hi));
                if (v > top) {
                    top = v;
                    arg = static_cast<long>(z);
                }
            }
            best[lo * q + hi] = top;
            split[lo * q + hi] = arg;
        }
    }
    result.cost = best[q - 1];

    std::vector<std::pair<long, long>> stack{{0, static_cast<long>(q) - 1}};
    while (!stack.empty()) {
        const auto [lo, hi] = stack.back();
        stack.pop_back();
        if (lo > hi) continue;
        const long z = split[static_cast<std::size_t>(lo) * q + static_cast<std::size_t>(hi)];
        if (z < 0) continue;
        CliqueBlock block{grid.slot(static_cast<std::size_t>(z)), {}};
        for (std::size_t j = 0; j < instance.size(); ++j) {
            const long a = static_cast<long>(grid.arrival_index(j));
            const long d = static_cast<long>(grid.deadline_index(j));
            if (lo <= a && a <= z && z <= d && d <= hi) block.members.push_back(instance[j].id);
        }
        if (!block.members.empty()) result.partition.blocks.push_back(std::move(block));
        stack.emplace_back(lo, z - 1);
        stack.emplace_back(z + 1, hi);
    }
    std::sort(result.partition.blocks.begin(), result.partition.blocks.end(),
              [](const CliqueBlock& a, const CliqueBlock& b) { return a.slot < b.slot; });
    for (const auto& block : result.partition.blocks)
        for (JobId id : block.members) result.plan.compressed[id] = block.slot;
    return result;
}

FullAttack online_edf_attack(const Instance& instance, const CostModel& cost) {
    FullAttack result;
    const std::size_t n = instance.size();
    std::vector<Slot> suffix_min(n + 1, 0);
    for (std::size_t i = n; i-- > 0;)
        suffix_min[i] = i + 1 == n ? instance[i].deadline : std::min(instance[i].deadline, suffix_min[i + 1]);

    std::size_t pos = 0;
    while (pos < n) {
        const Slot earliest = suffix_min[pos];
        CliqueBlock block{earliest, {}};
        double energy = 0.0;
        while (pos < n && instance[pos].arrival <= earliest) {
            block.members.push_back(instance[pos].id);
            result.plan.compressed[instance[pos].id] = earliest;
            energy += instance[pos].energy;
            ++pos;
        }
        result.cost += cost(energy);
        result.partition.blocks.push_back(std::move(block));
    }
    return result;
}

KnapsackResult fractional_knapsack(const std::vector<KnapsackItem>& items, double budget_fraction) {
    if (items.empty()) throw InvalidInput("fractional_knapsack needs at least one item");
    if (!(budget_fraction >= 0.0 && budget_fraction <= 1.0)) throw InvalidInput("knapsack budget fraction outside [0, 1]");
    double total_weight = 0.0;
    for (const auto& item : items) {
        if (!(item.weight > 0.0) || !(item.value >= 0.0)) throw InvalidInput("knapsack items need value >= 0, weight > 0");
        total_weight += item.weight;
    }

    KnapsackResult r;
    r.ordering.resize(items.size());
    std::iota(r.ordering.begin(), r.ordering.end(), std::size_t{0});
    std::stable_sort(r.ordering.begin(), r.ordering.end(), [&](std::size_t a, std::size_t b) {
        const double ra = items[a].value / items[a].weight;
        const double rb = items[b].value / items[b].weight;
        if (ra != rb) return ra > rb;
        return items[a].value > items[b].value;
    });

    const double budget = budget_fraction * total_weight;
    const double slack = 1e-12 * std::max(1.0, total_weight);
    double used = 0.0;
    while (r.chosen_count < items.size()) {
        const auto& next = items[r.ordering[r.chosen_count]];
        if (used + next.weight > budget + slack) break;
        used += next.weight;
        r.chosen_value += next.value;
        ++r.chosen_count;
    }
    if (r.chosen_count < items.size()) {
        const auto& next = items[r.ordering[r.chosen_count]];
        r.fraction = std::clamp((budget - used) / next.weight, 0.0, 1.0);
    }
    return r;
}

LimitedAttack limited_greedy_attack(const Instance& instance, double beta, const CostModel& cost) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidInput("beta must lie in [0, 1]");
    return limited_greedy_attack(instance, full_attack_dp(instance, cost), beta, cost);
}

LimitedAttack limited_greedy_attack(const Instance& instance, const FullAttack& full, double beta,
                                    const CostModel& cost) {
    LimitedAttack result;
    result.budget = attack_budget(beta, instance.size());
    if (instance.empty()) return result;
    const double n = static_cast<double>(instance.size());
    const auto& blocks = full.partition.blocks;

    std::vector<double> block_energy;
    std::vector<KnapsackItem> clique_items;
    for (const auto& block : blocks) {
        double e = 0.0;
        for (JobId id : block.members) e += instance[instance.index_of(id)].energy;
        block_energy.push_back(e);
        clique_items.push_back({cost(e), static_cast<double>(block.members.size())});
    }

    const KnapsackResult pick = fractional_knapsack(clique_items, static_cast<double>(result.budget) / n);
    if (pick.chosen_count == blocks.size()) {
        result.plan = full.plan;
        result.cost = full.cost;
        result.whole_cliques = full.cost;
        return result;
    }

    for (std::size_t r = 0; r < pick.chosen_count; ++r) result.whole_cliques += clique_items[pick.ordering[r]].value;

    const CliqueBlock& partial = blocks[pick.ordering[pick.chosen_count]];
    const double members = static_cast<double>(partial.members.size());
    const double partial_fraction = std::min(1.0, static_cast<double>(result.budget) / members);
    std::vector<KnapsackItem> job_items;
    for (JobId id : partial.members) job_items.push_back({instance[instance.index_of(id)].energy, 1.0});
    const KnapsackResult jobs_pick = fractional_knapsack(job_items, partial_fraction);
    double partial_energy = 0.0;
    for (std::size_t r = 0; r < jobs_pick.chosen_count; ++r) partial_energy += job_items[jobs_pick.ordering[r]].value;
    result.partial_clique = cost(partial_energy);

    if (result.whole_cliques >= result.partial_clique) {
        for (std::size_t r = 0; r < pick.chosen_count; ++r) {
            const CliqueBlock& block = blocks[pick.ordering[r]];
            for (JobId id : block.members) result.plan.compressed[id] = block.slot;
        }
        result.cost = result.whole_cliques;
    } else {
        for (std::size_t r = 0; r < jobs_pick.chosen_count; ++r)
            result.plan.compressed[partial.members[jobs_pick.ordering[r]]] = partial.slot;
        result.cost = result.partial_clique;
    }
    return result;
}

double realized_attack_cost(const Instance& instance, const AttackPlan& plan, const CostModel& cost) {
    return optimal_cost(apply_attack(instance, plan), cost);
}

std::vector<double> limited_attack_dp_curve(const Instance& instance, int max_budget, const CostModel& cost,
                                            Exec exec) {
    if (max_budget < 0) throw InvalidInput("budget must be non-negative");
    if (!instance.distinct_arrivals())
        throw InvalidInput("limited_attack_dp requires at most one arrival per slot");
    const std::size_t budgets = static_cast<std::size_t>(max_budget) + 1;
    if (instance.empty()) return std::vector<double>(budgets, 0.0);

    const EndpointGrid grid(instance);
    const std::size_t q = grid.size();

    // Jobs by energy descending, ties by id; partial cliques take a prefix.
    std::vector<std::size_t> by_energy(instance.size());
    std::iota(by_energy.begin(), by_energy.end(), std::size_t{0});
    std::stable_sort(by_energy.begin(), by_energy.end(), [&](std::size_t a, std::size_t b) {
        if (instance[a].energy != instance[b].energy) return instance[a].energy > instance[b].energy;
        return instance[a].id < instance[b].id;
    });

    std::vector<double> table(q * q * budgets, 0.0);
    auto cell = [&](long i, long j) -> const double* {
        return i > j ? nullptr : &table[(static_cast<std::size_t>(i) * q + static_cast<std::size_t>(j)) * budgets];
    };

    for (std::size_t width = 0; width < q; ++width) {
        const long last = static_cast<long>(q - width);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
        for (long i = 0; i < last; ++i) {
            const std::size_t lo = static_cast<std::size_t>(i);
            const std::size_t hi = lo + width;
            if (grid.count(lo, hi, lo, hi) == 0) continue;
            double* out = &table[(lo * q + hi) * budgets];
            std::vector<double> best(budgets, -1.0);
            std::vector<double> combined(budgets);
            std::vector<double> top_energy;
            std::vector<double> rest_cost;
            for (std::size_t z = lo; z <= hi; ++z) {
                double arriving = 0.0;
                top_energy.assign(1, 0.0);
                std::vector<double> others;
                for (std::size_t j : by_energy) {
                    const std::size_t a = grid.arrival_index(j);
                    const std::size_t d = grid.deadline_index(j);
                    if (a < lo || a > z || d < z || d > hi) continue;
                    if (a == z) arriving = instance[j].energy;
                    else others.push_back(instance[j].energy);
                }
                for (double e : others) top_energy.push_back(top_energy.back() + e);
                rest_cost.assign(others.size() + 1, 0.0);
                for (std::size_t r = others.size(); r-- > 0;) rest_cost[r] = rest_cost[r + 1] + cost(others[r]);

                const double* left = cell(i, static_cast<long>(z) - 1);
                const double* right = cell(static_cast<long>(z) + 1, static_cast<long>(hi));
                for (std::size_t m = 0; m < budgets; ++m) {
                    double h = -1.0;
                    for (std::size_t m1 = 0; m1 <= m; ++m1) {
                        const double v = (left ? left[m1] : 0.0) + (right ? right[m - m1] : 0.0);
                        if (v > h) h = v;
                    }
                    combined[m] = h;
                }
                for (std::size_t m = 0; m < budgets; ++m) {
                    const std::size_t cap = std::min(m, others.size());
                    for (std::size_t used = 0; used <= cap; ++used) {
                        const double v = cost(arriving + top_energy[used]) + rest_cost[used] + combined[m - used];
                        if (v > best[m]) best[m] = v;
                    }
                }
            }
            std::copy(best.begin(), best.end(), out);
        }
    }
    const double* root = &table[(q - 1) * budgets];
    return std::vector<double>(root, root + budgets);
}

double limited_attack_dp(const Instance& instance, double beta, const CostModel& cost, Exec exec) {
    const int budget = attack_budget(beta, instance.size());
    return limited_attack_dp_curve(instance, budget, cost, exec).back();
}

}  // namespace sgrid
