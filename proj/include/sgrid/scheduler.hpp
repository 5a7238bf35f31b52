#pragma once

#include <vector>

#include "sgrid/model.hpp"

namespace sgrid {

/// Densest window [start, end] of an instance and the jobs it contains.
struct CriticalInterval {
    Slot start = 0;
    Slot end = 0;
    double intensity = 0.0;
    std::vector<JobId> members;
};

/// Contained energy of [k, l] divided by its slot count.
[[nodiscard]] double compute_intensity(const Instance& instance, Slot k, Slot l);

/// Maximizer of compute_intensity over endpoint pairs. Ties go to the
/// smallest start, then the smallest end.
[[nodiscard]] CriticalInterval critical_interval(const Instance& instance);

/// Fills every slot of [k, l] to exactly `level` by serving, slot by slot,
/// released unfinished jobs in earliest-deadline order (ties by id). All jobs
/// must lie inside [k, l]. Throws std::logic_error if a job would miss its
/// deadline, which cannot happen when `level` is their mean load.
[[nodiscard]] Schedule edf_fill(const Instance& jobs, Slot k, Slot l, double level);

/// One step of the peeling: the interval in original slot labels.
struct Peel {
    std::vector<Slot> slots;
    double intensity = 0.0;
    std::vector<JobId> members;
};

struct OfflineSolution {
    Schedule schedule;
    std::vector<Peel> peels;
};

/// Minimum-cost admissible schedule for any convex non-decreasing cost.
/// Repeatedly extracts the critical interval, fills it flat, removes its jobs
/// and excises its slots from the remaining windows.
[[nodiscard]] OfflineSolution solve_optimal_offline(const Instance& instance);
[[nodiscard]] Schedule schedule_optimal_offline(const Instance& instance);

/// Each job spread evenly across its own window.
[[nodiscard]] Schedule schedule_online_even(const Instance& instance);

/// C_min: cost of the optimal controller on `instance`.
[[nodiscard]] double optimal_cost(const Instance& instance, const CostModel& cost);

}  // namespace sgrid
