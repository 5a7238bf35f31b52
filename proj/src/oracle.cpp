#include "sgrid/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "sgrid/scheduler.hpp"

namespace sgrid {

namespace {

std::uint64_t assignment_count(const Instance& instance) {
    double total = 1.0;
    for (const auto& job : instance.jobs()) total *= static_cast<double>(job.allowance() + 1);
    if (total > static_cast<double>(kEnumerationGuard))
        throw SearchTooLarge("exhaustive search over " + format_real(total) + " assignments exceeds the guard");
    return static_cast<std::uint64_t>(total);
}

double assignment_cost(const Instance& instance, const std::vector<Slot>& slots, std::vector<double>& loads,
                       const CostModel& cost) {
    std::fill(loads.begin(), loads.end(), 0.0);
    for (std::size_t j = 0; j < instance.size(); ++j) loads[static_cast<std::size_t>(slots[j])] += instance[j].energy;
    return load_cost(loads, cost);
}

double pmax_serial(const Instance& instance, const CostModel& cost) {
    std::vector<Slot> slots;
    for (const auto& job : instance.jobs()) slots.push_back(job.arrival);
    std::vector<double> loads(static_cast<std::size_t>(instance.horizon()) + 1);
    double best = 0.0;
    while (true) {
        best = std::max(best, assignment_cost(instance, slots, loads, cost));
        std::size_t j = 0;
        for (; j < slots.size(); ++j) {
            if (slots[j] < instance[j].deadline) {
                ++slots[j];
                break;
            }
            slots[j] = instance[j].arrival;
        }
        if (j == slots.size()) return best;
    }
}

double pmax_parallel(const Instance& instance, const CostModel& cost, std::uint64_t total) {
    const std::size_t n = instance.size();
    const std::size_t slots_needed = static_cast<std::size_t>(instance.horizon()) + 1;
    double best = 0.0;
#pragma omp parallel
    {
        std::vector<Slot> slots(n);
        std::vector<double> loads(slots_needed);
#pragma omp for reduction(max : best) schedule(static)
        for (std::int64_t flat = 0; flat < static_cast<std::int64_t>(total); ++flat) {
            auto rest = static_cast<std::uint64_t>(flat);
            for (std::size_t j = 0; j < n; ++j) {
                const auto radix = static_cast<std::uint64_t>(instance[j].allowance() + 1);
                slots[j] = instance[j].arrival + static_cast<Slot>(rest % radix);
                rest /= radix;
            }
            best = std::max(best, assignment_cost(instance, slots, loads, cost));
        }
    }
    return best;
}

// Best controller cost over every compression of the jobs in `mask`.
double best_over_mask(const Instance& instance, std::uint32_t mask, const CostModel& cost) {
    std::vector<std::size_t> chosen;
    for (std::size_t j = 0; j < instance.size(); ++j)
        if (mask >> j & 1U) chosen.push_back(j);
    std::vector<Job> jobs(instance.jobs().begin(), instance.jobs().end());
    for (std::size_t j : chosen) jobs[j].deadline = jobs[j].arrival;

    double best = 0.0;
    while (true) {
        best = std::max(best, optimal_cost(Instance(jobs), cost));
        std::size_t c = 0;
        for (; c < chosen.size(); ++c) {
            Job& job = jobs[chosen[c]];
            const Job& original = instance[chosen[c]];
            if (job.arrival < original.deadline) {
                ++job.arrival;
                job.deadline = job.arrival;
                break;
            }
            job.arrival = job.deadline = original.arrival;
        }
        if (c == chosen.size()) return best;
    }
}

}  // namespace

double brute_force_pmax(const Instance& instance, const CostModel& cost, Exec exec) {
    const std::uint64_t total = assignment_count(instance);
    if (instance.empty()) return 0.0;
    return exec == Exec::Parallel ? pmax_parallel(instance, cost, total) : pmax_serial(instance, cost);
}

double brute_force_maxmin(const Instance& instance, double beta, const CostModel& cost, Exec exec) {
    const int budget = attack_budget(beta, instance.size());
    if (instance.size() > 24) throw SearchTooLarge("maxmin enumeration supports at most 24 jobs");

    // Elementary symmetric sums of (l_j + 1) count the joint assignments.
    std::vector<double> by_size(static_cast<std::size_t>(budget) + 1, 0.0);
    by_size[0] = 1.0;
    for (const auto& job : instance.jobs())
        for (std::size_t k = by_size.size(); k-- > 1;) by_size[k] += by_size[k - 1] * (job.allowance() + 1);
    double total = 0.0;
    for (double c : by_size) total += c;
    if (total > static_cast<double>(kEnumerationGuard))
        throw SearchTooLarge("maxmin enumeration over " + format_real(total) + " assignments exceeds the guard");

    const auto masks = static_cast<std::int64_t>(1) << instance.size();
    double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(dynamic) if (exec == Exec::Parallel)
    for (std::int64_t mask = 0; mask < masks; ++mask) {
        if (std::popcount(static_cast<std::uint32_t>(mask)) > budget) continue;
        best = std::max(best, best_over_mask(instance, static_cast<std::uint32_t>(mask), cost));
    }
    return best;
}

OptimalityCertificate check_min_optimality(const Instance& instance, const Schedule& schedule, const CostModel& cost,
                                           double tol) {
    OptimalityCertificate cert;
    if (cost.exponent() == 1.0) return cert;

    const auto loads = schedule.loads();
    const auto horizon = static_cast<std::size_t>(instance.horizon());

    // arcs[t]: (t', job) for each slot t' reachable by moving energy a job
    // holds at t; the smallest-index job is kept per target.
    std::vector<std::vector<std::pair<Slot, JobId>>> arcs(horizon + 1);
    for (std::size_t t = 1; t <= horizon; ++t) {
        std::vector<JobId> carrier(horizon + 1, -1);
        for (std::size_t j = 0; j < instance.size(); ++j) {
            const Job& job = instance[j];
            if (schedule.at(j, static_cast<Slot>(t)) <= tol) continue;
            for (Slot u = job.arrival; u <= job.deadline; ++u)
                if (static_cast<std::size_t>(u) != t && carrier[static_cast<std::size_t>(u)] < 0)
                    carrier[static_cast<std::size_t>(u)] = job.id;
        }
        for (std::size_t u = 1; u <= horizon; ++u)
            if (carrier[u] >= 0) arcs[t].emplace_back(static_cast<Slot>(u), carrier[u]);
    }

    for (std::size_t source = 1; source <= horizon; ++source) {
        if (arcs[source].empty()) continue;
        std::vector<long> parent(horizon + 1, -2);
        std::vector<JobId> parent_job(horizon + 1, -1);
        std::vector<std::size_t> depth(horizon + 1, 0);
        std::deque<std::size_t> queue{source};
        parent[source] = -1;
        while (!queue.empty()) {
            const std::size_t t = queue.front();
            queue.pop_front();
            if (!cert.optimal && depth[t] + 1 >= cert.path.size() - 1) break;
            bool hit = false;
            for (const auto& [u, job] : arcs[t]) {
                const auto next = static_cast<std::size_t>(u);
                if (parent[next] != -2) continue;
                parent[next] = static_cast<long>(t);
                parent_job[next] = job;
                depth[next] = depth[t] + 1;
                if (loads[source] - loads[next] > tol) {
                    std::vector<Slot> path;
                    std::vector<JobId> via;
                    for (long v = static_cast<long>(next); v != -1; v = parent[static_cast<std::size_t>(v)]) {
                        path.push_back(static_cast<Slot>(v));
                        if (parent[static_cast<std::size_t>(v)] != -1) via.push_back(parent_job[static_cast<std::size_t>(v)]);
                    }
                    std::reverse(path.begin(), path.end());
                    std::reverse(via.begin(), via.end());
                    if (cert.optimal || path.size() < cert.path.size()) {
                        cert.optimal = false;
                        cert.path = std::move(path);
                        cert.via = std::move(via);
                    }
                    hit = true;
                    break;
                }
                queue.push_back(next);
            }
            if (hit) break;
        }
    }
    return cert;
}

}  // namespace sgrid
