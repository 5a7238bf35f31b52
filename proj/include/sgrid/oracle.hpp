#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sgrid/exec.hpp"
#include "sgrid/model.hpp"

namespace sgrid {

/// Maximum number of joint assignments an exhaustive search may visit.
inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;

class SearchTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact C_max by enumerating every t_j in [a_j, d_j]. Serial walks an
/// odometer; Parallel decodes a flat index per OpenMP iteration.
[[nodiscard]] double brute_force_pmax(const Instance& instance, const CostModel& cost, Exec exec = Exec::Parallel);

/// Exact C_maxmin(beta): every set of at most floor(beta * n) jobs, every
/// compression slot for them, scored by the optimal controller.
[[nodiscard]] double brute_force_maxmin(const Instance& instance, double beta, const CostModel& cost,
                                        Exec exec = Exec::Parallel);

struct OptimalityCertificate {
    bool optimal = true;
    std::vector<Slot> path;  // violating transfer path, source first
    std::vector<JobId> via;  // job carrying energy along each arc of `path`
};

/// First-order optimality of a schedule for a convex separable cost: no slot
/// may reach, through a chain of jobs holding energy there, a slot whose load
/// is lower by more than `tol`. Linear costs are always optimal. On failure the
/// shortest violating path is returned.
[[nodiscard]] OptimalityCertificate check_min_optimality(const Instance& instance, const Schedule& schedule,
                                                         const CostModel& cost, double tol = 1e-7);

}  // namespace sgrid
