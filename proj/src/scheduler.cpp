#include "sgrid/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgrid {

double compute_intensity(const Instance& instance, Slot k, Slot l) {
    if (k > l) throw InvalidInput("intensity interval requires k <= l");
    double sum = 0.0;
    for (const auto& job : instance.jobs())
        if (job.arrival >= k && job.deadline <= l) sum += job.energy;
    return sum / static_cast<double>(l - k + 1);
}

CriticalInterval critical_interval(const Instance& instance) {
    if (instance.empty()) throw InvalidInput("critical interval of an empty instance");

    std::vector<Job> by_deadline(instance.jobs().begin(), instance.jobs().end());
    std::stable_sort(by_deadline.begin(), by_deadline.end(),
                     [](const Job& a, const Job& b) { return a.deadline < b.deadline; });

    CriticalInterval best;
    bool found = false;
    for (Slot k : instance.endpoints()) {
        double sum = 0.0;
        for (std::size_t i = 0; i < by_deadline.size(); ++i) {
            const Job& job = by_deadline[i];
            if (job.arrival >= k) sum += job.energy;
            const bool last_of_deadline = i + 1 == by_deadline.size() || by_deadline[i + 1].deadline != job.deadline;
            if (!last_of_deadline || job.deadline < k || sum <= 0.0) continue;
            const double intensity = sum / static_cast<double>(job.deadline - k + 1);
            if (!found || intensity > best.intensity) {
                best.start = k;
                best.end = job.deadline;
                best.intensity = intensity;
                found = true;
            }
        }
    }
    for (const auto& job : instance.contained(best.start, best.end)) best.members.push_back(job.id);
    return best;
}

Schedule edf_fill(const Instance& jobs, Slot k, Slot l, double level) {
    for (const auto& job : jobs.jobs())
        if (job.arrival < k || job.deadline > l)
            throw InvalidInput("edf_fill: job " + std::to_string(job.id) + " not inside the interval");

    Schedule out(jobs);
    std::vector<double> remaining;
    for (const auto& job : jobs.jobs()) remaining.push_back(job.energy);

    std::vector<std::size_t> order(jobs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return jobs[a].deadline != jobs[b].deadline ? jobs[a].deadline < jobs[b].deadline : jobs[a].id < jobs[b].id;
    });

    const double slot_eps = 1e-12 * std::max(1.0, level);
    for (Slot t = k; t <= l; ++t) {
        double capacity = level;
        for (std::size_t i : order) {
            if (capacity <= slot_eps) break;
            const Job& job = jobs[i];
            if (job.arrival > t || remaining[i] <= 0.0) continue;
            const double amount = std::min(remaining[i], capacity);
            out.add(i, t, amount);
            remaining[i] -= amount;
            capacity -= amount;
            if (remaining[i] <= 1e-12 * std::max(1.0, job.energy)) remaining[i] = 0.0;
        }
        if (capacity > kEnergyTol * std::max(1.0, level))
            throw std::logic_error("edf_fill: slot " + std::to_string(t) + " cannot be filled to the level");
        for (std::size_t i = 0; i < jobs.size(); ++i)
            if (jobs[i].deadline == t && remaining[i] > kEnergyTol * std::max(1.0, jobs[i].energy))
                throw std::logic_error("edf_fill: job " + std::to_string(jobs[i].id) + " misses its deadline");
    }
    return out;
}

namespace {

struct ReducedJob {
    std::size_t index;  // position in the original instance
    Job job;            // window in reduced slot labels
};

}  // namespace

OfflineSolution solve_optimal_offline(const Instance& instance) {
    OfflineSolution result{Schedule(instance), {}};

    // alive[r - 1] is the original label of reduced slot r.
    std::vector<Slot> alive(static_cast<std::size_t>(instance.horizon()));
    for (std::size_t r = 0; r < alive.size(); ++r) alive[r] = static_cast<Slot>(r + 1);

    std::vector<ReducedJob> pending;
    for (std::size_t i = 0; i < instance.size(); ++i) pending.push_back({i, instance[i]});

    while (!pending.empty()) {
        std::vector<Job> current;
        for (const auto& p : pending) current.push_back(p.job);
        const Instance reduced(std::move(current));
        const CriticalInterval ci = critical_interval(reduced);

        std::vector<Job> members;
        std::vector<std::size_t> member_index;
        std::vector<ReducedJob> rest;
        for (const auto& p : pending) {
            if (p.job.arrival >= ci.start && p.job.deadline <= ci.end) {
                members.push_back(p.job);
                member_index.push_back(p.index);
            } else {
                rest.push_back(p);
            }
        }

        const Instance block(members);
        const Schedule fill = edf_fill(block, ci.start, ci.end, ci.intensity);
        for (std::size_t b = 0; b < block.size(); ++b) {
            // block is re-sorted; map back through ids
            const JobId id = block[b].id;
            std::size_t original = 0;
            for (std::size_t m = 0; m < members.size(); ++m)
                if (members[m].id == id) original = member_index[m];
            for (Slot r = block[b].arrival; r <= block[b].deadline; ++r) {
                const double amount = fill.at(b, r);
                if (amount > 0.0) result.schedule.add(original, alive[static_cast<std::size_t>(r - 1)], amount);
            }
        }

        Peel peel;
        peel.intensity = ci.intensity;
        peel.members = ci.members;
        for (Slot r = ci.start; r <= ci.end; ++r) peel.slots.push_back(alive[static_cast<std::size_t>(r - 1)]);
        result.peels.push_back(std::move(peel));

        const int width = ci.end - ci.start + 1;
        alive.erase(alive.begin() + (ci.start - 1), alive.begin() + ci.end);
        for (auto& p : rest) {
            Slot& a = p.job.arrival;
            Slot& d = p.job.deadline;
            if (a > ci.end) a -= width;
            else if (a >= ci.start) a = ci.start;
            if (d > ci.end) d -= width;
            else if (d >= ci.start) d = ci.start - 1;
        }
        pending = std::move(rest);
    }
    return result;
}

Schedule schedule_optimal_offline(const Instance& instance) {
    return solve_optimal_offline(instance).schedule;
}

Schedule schedule_online_even(const Instance& instance) {
    Schedule s(instance);
    for (std::size_t i = 0; i < instance.size(); ++i) {
        const Job& job = instance[i];
        const double share = job.energy / static_cast<double>(job.allowance() + 1);
        for (Slot t = job.arrival; t <= job.deadline; ++t) s.set(i, t, share);
    }
    return s;
}

double optimal_cost(const Instance& instance, const CostModel& cost) {
    return evaluate_cost(schedule_optimal_offline(instance), cost);
}

}  // namespace sgrid
