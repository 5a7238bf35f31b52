#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgrid/exec.hpp"
#include "sgrid/model.hpp"

namespace sgrid {

inline constexpr const char* kVersion = "1.0.0";

struct GenParams {
    std::size_t n = 100;
    double mean_interarrival = 5.0;
    double mean_allowance = 10.0;
    double energy_low = 1.0;
    double energy_high = 5.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Random demands: exponential interarrival gaps and allowances rounded to
/// the nearest integer and floored at 1, first arrival at slot 1, energies
/// uniform on [energy_low, energy_high]. Ids run 1..n. Deterministic in seed.
[[nodiscard]] Instance generate_instance(const GenParams& params);

/// n copies of one demand, job i arriving at 1 + (i - 1) * interarrival.
[[nodiscard]] Instance make_identical_instance(int n, double energy, int allowance, int interarrival);

/// Independent stream seed for one trial; a function of its inputs only.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

enum class Experiment { Fig2Bound, Fig3Costs, Fig4MaxminBounds, Fig5OrderedRatio };

[[nodiscard]] const char* experiment_name(Experiment e);
[[nodiscard]] Experiment parse_experiment(const std::string& name);

struct ExperimentConfig {
    Experiment experiment = Experiment::Fig3Costs;
    int trials = 1;
    double b = 2.0;
    std::uint64_t master_seed = 1;
    std::string output_path;

    // random-instance parameters (fig3, fig4)
    std::size_t n = 100;
    double mean_interarrival = 5.0;
    double mean_allowance = 40.0;
    double energy_low = 1.0;
    double energy_high = 5.0;

    std::vector<double> allowance_means;  // fig3 sweep
    std::vector<double> betas;            // fig4, fig5 sweep
    std::vector<int> interarrivals;       // fig5 M_a sweep
    std::vector<std::size_t> job_counts;  // fig2 n grid
    std::vector<int> min_allowances;      // fig2 l_min grid

    double mean_energy = 10.0;    // fig2
    double identical_energy = 5.0;  // fig5
    int identical_allowance = 50;   // fig5

    /// Figure parameters used for the published runs.
    [[nodiscard]] static ExperimentConfig defaults(Experiment e);

    /// Throws InvalidInput if a sweep required by `experiment` is missing or
    /// a parameter is out of range.
    void validate() const;
};

/// Aggregated experiment output, one row per sweep point.
struct ExperimentTable {
    std::string metadata;  // `# seed=..., b=..., version=...` preamble
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::size_t column(const std::string& name) const;
    [[nodiscard]] std::string to_csv() const;
};

/// Runs every trial (concurrently under Exec::Parallel) and averages in trial
/// order, so the table does not depend on scheduling. A failing trial aborts
/// the run with its seed in the message.
[[nodiscard]] ExperimentTable run_experiment(const ExperimentConfig& config, Exec exec = Exec::Parallel);

/// Writes `table` to `path`; throws std::runtime_error naming the path on I/O
/// failure.
void write_table(const ExperimentTable& table, const std::string& path);

}  // namespace sgrid
