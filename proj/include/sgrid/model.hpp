#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgrid {

/// Integer time-slot label. Slots are 1-based and intervals are inclusive.
using Slot = int;
using JobId = int;

/// Conservation tolerance for real-valued schedules.
inline constexpr double kEnergyTol = 1e-9;

/// Raised when an input (instance, plan, schedule, parameter) breaks a
/// documented invariant.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One energy demand: serve `energy` units somewhere in [arrival, deadline].
struct Job {
    JobId id = 0;
    Slot arrival = 1;
    Slot deadline = 1;
    double energy = 0.0;

    /// Slack between arrival and deadline (l_j = d_j - a_j).
    [[nodiscard]] int allowance() const { return deadline - arrival; }
    [[nodiscard]] bool contains(Slot t) const { return arrival <= t && t <= deadline; }

    friend bool operator==(const Job&, const Job&) = default;
};

/// Throws InvalidInput if the job breaks its invariants.
void validate_job(const Job& job);

/// An immutable collection of jobs sorted by (arrival, id).
class Instance {
public:
    Instance() = default;
    explicit Instance(std::vector<Job> jobs);

    [[nodiscard]] std::span<const Job> jobs() const { return jobs_; }
    [[nodiscard]] std::size_t size() const { return jobs_.size(); }
    [[nodiscard]] bool empty() const { return jobs_.empty(); }
    [[nodiscard]] const Job& operator[](std::size_t i) const { return jobs_[i]; }

    /// Maximum deadline, 0 for an empty instance.
    [[nodiscard]] Slot horizon() const { return horizon_; }

    /// Position of the job with the given id; throws InvalidInput if unknown.
    [[nodiscard]] std::size_t index_of(JobId id) const;

    /// Sorted distinct arrivals and deadlines (the endpoint set X).
    [[nodiscard]] std::vector<Slot> endpoints() const;

    /// Jobs whose window lies entirely inside [k, l].
    [[nodiscard]] std::vector<Job> contained(Slot k, Slot l) const;

    [[nodiscard]] double total_energy() const;
    [[nodiscard]] int min_allowance() const;
    [[nodiscard]] int max_allowance() const;

    /// True when no two jobs share an arrival slot.
    [[nodiscard]] bool distinct_arrivals() const;

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    std::vector<Job> jobs_;
    Slot horizon_ = 0;
};

/// Per-slot cost C(E) = E^b. C(0) = 0, non-decreasing and convex for b >= 1.
class CostModel {
public:
    enum class Family { Power };

    explicit CostModel(double exponent = 2.0);

    [[nodiscard]] Family family() const { return Family::Power; }
    [[nodiscard]] double exponent() const { return exponent_; }
    [[nodiscard]] double operator()(double load) const;

private:
    double exponent_;
};

/// Allocation matrix of an instance. Row i belongs to instance job i and only
/// stores the slots of that job's window, so allocations outside the window
/// are zero by construction.
class Schedule {
public:
    Schedule() = default;
    explicit Schedule(const Instance& instance);

    [[nodiscard]] const Instance& instance() const { return instance_; }

    /// Allocation of instance job `index` at slot t (0 outside its window).
    [[nodiscard]] double at(std::size_t index, Slot t) const;
    void set(std::size_t index, Slot t, double amount);
    void add(std::size_t index, Slot t, double amount);

    /// E_S(t) indexed by slot; element 0 is unused and always 0.
    [[nodiscard]] std::vector<double> loads() const;

    /// Throws InvalidInput on negative allocations or energy not conserved
    /// within `tol`.
    void validate(double tol = kEnergyTol) const;

private:
    Instance instance_;
    std::vector<std::vector<double>> rows_;
};

/// Every job served entirely at its arrival slot.
[[nodiscard]] Schedule inelastic_schedule(const Instance& instance);

/// Per-job compressed slots t_j (a'_j = d'_j = t_j). Jobs absent from the map
/// are left untouched.
struct AttackPlan {
    std::map<JobId, Slot> compressed;

    /// J*: compressed jobs whose window actually changes.
    [[nodiscard]] std::set<JobId> altered(const Instance& instance) const;
};

/// Throws InvalidInput for unknown ids or slots outside a job's window.
void validate_plan(const Instance& instance, const AttackPlan& plan);

struct CliqueBlock {
    Slot slot = 0;
    std::vector<JobId> members;
};

/// Partition of the jobs into groups that share the common slot of each block.
struct CliquePartition {
    std::vector<CliqueBlock> blocks;
};

/// Throws InvalidInput unless the blocks partition the instance's ids and each
/// member's window contains its block slot.
void validate_partition(const Instance& instance, const CliquePartition& partition);

/// The altered demands an attacker forwards for `plan`.
[[nodiscard]] Instance apply_attack(const Instance& instance, const AttackPlan& plan);

/// Sum over slots of C(load).
[[nodiscard]] double load_cost(std::span<const double> loads, const CostModel& cost);
[[nodiscard]] double evaluate_cost(const Schedule& schedule, const CostModel& cost);

/// Cost of serving each job in full at its arrival slot.
[[nodiscard]] double baseline_cost(const Instance& instance, const CostModel& cost);

/// Floor of beta * n, with slack for beta values such as 0.29 whose product
/// with n lands just under an integer.
[[nodiscard]] int attack_budget(double beta, std::size_t n);

// Instance files: header `id,arrival,deadline,energy`, one job per line.
[[nodiscard]] Instance read_instance_csv(std::istream& in);
[[nodiscard]] Instance read_instance_csv(const std::string& path);
void write_instance_csv(std::ostream& out, const Instance& instance);

/// Decimal rendering with 12 significant digits.
[[nodiscard]] std::string format_real(double value);

}  // namespace sgrid
