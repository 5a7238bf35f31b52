#include "sgrid/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sgrid/analysis.hpp"
#include "sgrid/attacker.hpp"
#include "sgrid/scheduler.hpp"

namespace sgrid {

void GenParams::validate() const {
    if (n < 1) throw InvalidInput("n must be >= 1");
    if (!(mean_interarrival > 0.0) || !(mean_allowance > 0.0)) throw InvalidInput("means must be positive");
    if (!(energy_low > 0.0) || !(energy_low <= energy_high)) throw InvalidInput("need 0 < energy_low <= energy_high");
}

namespace {

int rounded_at_least_one(double x) { return std::max(1, static_cast<int>(std::lround(x))); }

std::vector<double> beta_grid(int steps, bool with_zero) {
    std::vector<double> out;
    for (int i = with_zero ? 0 : 1; i <= steps; ++i) out.push_back(static_cast<double>(i) / steps);
    return out;
}

}  // namespace

Instance generate_instance(const GenParams& params) {
    params.validate();
    std::mt19937_64 rng(params.seed);
    std::exponential_distribution<double> gap(1.0 / params.mean_interarrival);
    std::exponential_distribution<double> slack(1.0 / params.mean_allowance);
    std::uniform_real_distribution<double> energy(params.energy_low, params.energy_high);

    std::vector<Job> jobs;
    jobs.reserve(params.n);
    Slot arrival = 1;
    for (std::size_t i = 0; i < params.n; ++i) {
        if (i > 0) arrival += rounded_at_least_one(gap(rng));
        const int allowance = rounded_at_least_one(slack(rng));
        const double e = params.energy_low == params.energy_high ? params.energy_low : energy(rng);
        jobs.push_back({static_cast<JobId>(i + 1), arrival, arrival + allowance, e});
    }
    return Instance(std::move(jobs));
}

Instance make_identical_instance(int n, double energy, int allowance, int interarrival) {
    if (n < 1 || !(energy > 0.0) || allowance < 1 || interarrival < 1)
        throw InvalidInput("identical instance parameters must be positive");
    std::vector<Job> jobs;
    for (int i = 1; i <= n; ++i) {
        const Slot a = 1 + (i - 1) * interarrival;
        jobs.push_back({i, a, a + allowance, energy});
    }
    return Instance(std::move(jobs));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(master) ^ mix(index + 0x632be59bd9b4e019ULL));
}

const char* experiment_name(Experiment e) {
    switch (e) {
        case Experiment::Fig2Bound: return "fig2";
        case Experiment::Fig3Costs: return "fig3";
        case Experiment::Fig4MaxminBounds: return "fig4";
        case Experiment::Fig5OrderedRatio: return "fig5";
    }
    return "?";
}

Experiment parse_experiment(const std::string& name) {
    if (name == "fig2") return Experiment::Fig2Bound;
    if (name == "fig3") return Experiment::Fig3Costs;
    if (name == "fig4") return Experiment::Fig4MaxminBounds;
    if (name == "fig5") return Experiment::Fig5OrderedRatio;
    throw InvalidInput("unknown experiment '" + name + "'");
}

ExperimentConfig ExperimentConfig::defaults(Experiment e) {
    ExperimentConfig c;
    c.experiment = e;
    switch (e) {
        case Experiment::Fig2Bound:
            c.job_counts = {50, 100, 200};
            for (int l = 5; l <= 50; l += 5) c.min_allowances.push_back(l);
            c.mean_energy = 10.0;
            c.mean_interarrival = 5.0;
            break;
        case Experiment::Fig3Costs:
            c.trials = 20;
            c.n = 100;
            c.energy_low = 1.0;
            c.energy_high = 5.0;
            for (int m = 5; m <= 50; m += 5) c.allowance_means.push_back(m);
            break;
        case Experiment::Fig4MaxminBounds:
            c.trials = 5;
            c.n = 50;
            c.energy_low = 1.0;
            c.energy_high = 20.0;
            c.mean_allowance = 40.0;
            c.betas = beta_grid(50, true);
            break;
        case Experiment::Fig5OrderedRatio:
            c.n = 50;
            c.identical_energy = 5.0;
            c.identical_allowance = 50;
            for (int m = 1; m <= 10; ++m) c.interarrivals.push_back(m);
            c.betas = beta_grid(50, false);
            break;
    }
    return c;
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw InvalidInput("trials must be >= 1");
    if (!std::isfinite(b) || b < 1.0) throw InvalidInput("cost exponent b must be >= 1");
    auto check_betas = [&] {
        if (betas.empty()) throw InvalidInput(std::string(experiment_name(experiment)) + " needs a beta grid");
        for (double beta : betas)
            if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidInput("beta values must lie in [0, 1]");
    };
    auto check_random = [&] {
        GenParams{n, mean_interarrival, allowance_means.empty() ? mean_allowance : allowance_means.front(), energy_low,
                  energy_high, 0}
            .validate();
    };
    switch (experiment) {
        case Experiment::Fig2Bound:
            if (job_counts.empty() || min_allowances.empty()) throw InvalidInput("fig2 needs n and l_min grids");
            for (int l : min_allowances)
                if (l < 1) throw InvalidInput("l_min values must be >= 1");
            for (auto count : job_counts)
                if (count < 1) throw InvalidInput("n values must be >= 1");
            if (!(mean_energy > 0.0) || !(mean_interarrival > 0.0)) throw InvalidInput("fig2 means must be positive");
            break;
        case Experiment::Fig3Costs:
            if (allowance_means.empty()) throw InvalidInput("fig3 needs an allowance-mean grid");
            for (double m : allowance_means)
                if (!(m > 0.0)) throw InvalidInput("allowance means must be positive");
            check_random();
            break;
        case Experiment::Fig4MaxminBounds:
            check_betas();
            check_random();
            break;
        case Experiment::Fig5OrderedRatio:
            check_betas();
            if (interarrivals.empty()) throw InvalidInput("fig5 needs an interarrival grid");
            for (int m : interarrivals)
                if (m < 1) throw InvalidInput("interarrival values must be >= 1");
            if (n < 1 || !(identical_energy > 0.0) || identical_allowance < 1)
                throw InvalidInput("fig5 identical-job parameters must be positive");
            break;
    }
}

std::size_t ExperimentTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw InvalidInput("no column '" + name + "'");
}

std::string ExperimentTable::to_csv() const {
    std::ostringstream out;
    out << metadata << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_real(row[i]);
        out << '\n';
    }
    return out.str();
}

void write_table(const ExperimentTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << table.to_csv();
    out.flush();
    if (!out) throw std::runtime_error("failed writing output file " + path);
}

namespace {

/// Runs work(i) for i in [0, count); the first failure (lowest index) is
/// rethrown after the loop with `describe(i)` prepended.
template <typename Work, typename Describe>
void run_items(std::size_t count, Exec exec, Work&& work, Describe&& describe) {
    std::vector<std::optional<std::string>> errors(count);
    const auto total = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (long i = 0; i < total; ++i) {
        try {
            work(static_cast<std::size_t>(i));
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
    for (std::size_t i = 0; i < count; ++i)
        if (errors[i]) throw std::runtime_error(describe(i) + ": " + *errors[i]);
}

std::string metadata_line(const ExperimentConfig& c, const std::string& extra = {}) {
    std::ostringstream out;
    out << "# seed=" << c.master_seed << ", b=" << format_real(c.b) << ", version=" << kVersion
        << ", experiment=" << experiment_name(c.experiment) << ", trials=" << c.trials;
    if (c.experiment == Experiment::Fig3Costs || c.experiment == Experiment::Fig4MaxminBounds)
        out << ", arrivals=exponential gaps rounded to nearest slot (min 1), allowances rounded (min 1)";
    out << extra;
    return out.str();
}

ExperimentTable run_fig2(const ExperimentConfig& c) {
    ExperimentTable t{metadata_line(c), {"n", "l_min", "c_max_lower_bound"}, {}};
    for (auto n : c.job_counts)
        for (int l : c.min_allowances)
            t.rows.push_back({static_cast<double>(n), static_cast<double>(l),
                              prop2_expected_bound(n, l, c.mean_energy, c.mean_interarrival, c.b)});
    return t;
}

ExperimentTable run_fig3(const ExperimentConfig& c, Exec exec) {
    const CostModel cost(c.b);
    const std::size_t points = c.allowance_means.size();
    const auto trials = static_cast<std::size_t>(c.trials);
    struct Costs {
        double min_offline, min_online, base, max_offline, max_online;
    };
    std::vector<Costs> results(points * trials);

    auto params_for = [&](std::size_t item) {
        return GenParams{c.n, c.mean_interarrival, c.allowance_means[item / trials], c.energy_low, c.energy_high,
                         derive_seed(c.master_seed, item % trials)};
    };
    run_items(
        results.size(), exec,
        [&](std::size_t item) {
            const Instance inst = generate_instance(params_for(item));
            results[item] = {optimal_cost(inst, cost), evaluate_cost(schedule_online_even(inst), cost),
                             baseline_cost(inst, cost), full_attack_dp(inst, cost, Exec::Serial).cost,
                             online_edf_attack(inst, cost).cost};
        },
        [&](std::size_t item) { return "trial seed=" + std::to_string(params_for(item).seed); });

    ExperimentTable t{metadata_line(c),
                      {"allowance_mean", "c_min_offline", "c_min_online", "c_base", "c_max_offline", "c_max_online",
                       "c_min_offline_over_base", "c_min_online_over_base", "c_max_offline_over_base",
                       "c_max_online_over_base"},
                      {}};
    for (std::size_t p = 0; p < points; ++p) {
        Costs avg{0, 0, 0, 0, 0};
        for (std::size_t k = 0; k < trials; ++k) {
            const Costs& r = results[p * trials + k];
            avg.min_offline += r.min_offline;
            avg.min_online += r.min_online;
            avg.base += r.base;
            avg.max_offline += r.max_offline;
            avg.max_online += r.max_online;
        }
        const double inv = 1.0 / static_cast<double>(trials);
        avg = {avg.min_offline * inv, avg.min_online * inv, avg.base * inv, avg.max_offline * inv,
               avg.max_online * inv};
        t.rows.push_back({c.allowance_means[p], avg.min_offline, avg.min_online, avg.base, avg.max_offline,
                          avg.max_online, avg.min_offline / avg.base, avg.min_online / avg.base,
                          avg.max_offline / avg.base, avg.max_online / avg.base});
    }
    return t;
}

ExperimentTable run_fig4(const ExperimentConfig& c, Exec exec) {
    const CostModel cost(c.b);
    const auto trials = static_cast<std::size_t>(c.trials);
    const std::size_t nb = c.betas.size();
    struct TrialResult {
        std::vector<double> lower, upper;
        double base = 0.0, max = 0.0;
        int redraws = 0;
    };
    std::vector<TrialResult> results(trials);

    run_items(
        trials, exec,
        [&](std::size_t k) {
            TrialResult& r = results[k];
            const std::uint64_t seed = derive_seed(c.master_seed, k);
            GenParams p{c.n, c.mean_interarrival, c.mean_allowance, c.energy_low, c.energy_high, seed};
            Instance inst = generate_instance(p);
            while (!inst.distinct_arrivals()) {
                ++r.redraws;
                p.seed = derive_seed(seed, static_cast<std::uint64_t>(r.redraws));
                inst = generate_instance(p);
            }
            const FullAttack full = full_attack_dp(inst, cost, Exec::Serial);
            const auto curve =
                limited_attack_dp_curve(inst, static_cast<int>(inst.size()), cost, Exec::Serial);
            r.base = baseline_cost(inst, cost);
            r.max = full.cost;
            for (double beta : c.betas) {
                r.lower.push_back(limited_greedy_attack(inst, full, beta, cost).cost);
                r.upper.push_back(curve[static_cast<std::size_t>(attack_budget(beta, inst.size()))]);
            }
        },
        [&](std::size_t k) { return "trial seed=" + std::to_string(derive_seed(c.master_seed, k)); });

    int redraws = 0;
    for (const auto& r : results) redraws += r.redraws;
    ExperimentTable t{metadata_line(c, ", arrival_collision_redraws=" + std::to_string(redraws)),
                      {"beta", "c_maxmin_lower", "c_maxmin_upper", "c_base", "c_max"},
                      {}};
    const double inv = 1.0 / static_cast<double>(trials);
    for (std::size_t bi = 0; bi < nb; ++bi) {
        double lower = 0.0, upper = 0.0, base = 0.0, max = 0.0;
        for (const auto& r : results) {
            lower += r.lower[bi];
            upper += r.upper[bi];
            base += r.base;
            max += r.max;
        }
        t.rows.push_back({c.betas[bi], lower * inv, upper * inv, base * inv, max * inv});
    }
    return t;
}

ExperimentTable run_fig5(const ExperimentConfig& c, Exec exec) {
    const CostModel cost(c.b);
    const std::size_t points = c.interarrivals.size();
    std::vector<std::vector<std::vector<double>>> blocks(points);

    run_items(
        points, exec,
        [&](std::size_t p) {
            const Instance inst = make_identical_instance(static_cast<int>(c.n), c.identical_energy,
                                                          c.identical_allowance, c.interarrivals[p]);
            const FullAttack full = full_attack_dp(inst, cost, Exec::Serial);
            for (double beta : c.betas) {
                const double lower = limited_greedy_attack(inst, full, beta, cost).cost;
                blocks[p].push_back({static_cast<double>(c.interarrivals[p]), beta, lower / full.cost, lower,
                                     full.cost});
            }
        },
        [&](std::size_t p) { return "interarrival=" + std::to_string(c.interarrivals[p]); });

    ExperimentTable t{metadata_line(c, ", identical_jobs=" + std::to_string(c.n)),
                      {"interarrival", "beta", "ratio", "c_maxmin_lower", "c_max"},
                      {}};
    for (auto& rows : blocks)
        for (auto& row : rows) t.rows.push_back(std::move(row));
    return t;
}

}  // namespace

ExperimentTable run_experiment(const ExperimentConfig& config, Exec exec) {
    config.validate();
    switch (config.experiment) {
        case Experiment::Fig2Bound: return run_fig2(config);
        case Experiment::Fig3Costs: return run_fig3(config, exec);
        case Experiment::Fig4MaxminBounds: return run_fig4(config, exec);
        case Experiment::Fig5OrderedRatio: return run_fig5(config, exec);
    }
    throw InvalidInput("unknown experiment");
}

}  // namespace sgrid
