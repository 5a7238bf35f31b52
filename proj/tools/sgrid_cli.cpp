// Command-line front end: solve, attack, bound and oracle commands on an
// instance file, plus the figure experiments.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sgrid/analysis.hpp"
#include "sgrid/attacker.hpp"
#include "sgrid/harness.hpp"
#include "sgrid/oracle.hpp"
#include "sgrid/scheduler.hpp"

using namespace sgrid;

namespace {

void print(const std::string& key, double value) { std::cout << key << ',' << format_real(value) << '\n'; }

void print_plan(const AttackPlan& plan) {
    std::cout << "job,slot\n";
    for (const auto& [id, slot] : plan.compressed) std::cout << id << ',' << slot << '\n';
}

void print_partition(const CliquePartition& partition) {
    std::cout << "block_slot,members\n";
    for (const auto& block : partition.blocks) {
        std::cout << block.slot << ',';
        for (std::size_t i = 0; i < block.members.size(); ++i) std::cout << (i ? " " : "") << block.members[i];
        std::cout << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Demand scheduling under demand-alteration attacks"};
    app.require_subcommand(1);

    std::string path;
    double b = 2.0;
    double beta = 1.0;

    auto* solve = app.add_subcommand("solve-min", "optimal controller schedule and its cost");
    auto* full = app.add_subcommand("attack-full", "optimal full-compression attack");
    auto* online = app.add_subcommand("attack-online", "online earliest-deadline attack");
    auto* limited = app.add_subcommand("attack-limited", "budget-limited greedy attack and its DP upper bound");
    auto* bounds = app.add_subcommand("bounds", "closed-form attack bounds");
    for (auto* cmd : {solve, full, online, limited, bounds}) {
        cmd->add_option("instance", path, "instance CSV (id,arrival,deadline,energy)")->required();
        cmd->add_option("--b", b, "cost exponent, C(E) = E^b")->capture_default_str();
    }
    limited->add_option("--beta", beta, "fraction of demands the attacker may alter")->required();
    bounds->add_option("--beta", beta, "budget fraction for the limited-attack bound")->capture_default_str();

    auto* oracle = app.add_subcommand("oracle", "exhaustive reference solvers");
    std::string oracle_kind;
    oracle->add_option("kind", oracle_kind, "pmax | maxmin | verify-min")
        ->required()
        ->check(CLI::IsMember({"pmax", "maxmin", "verify-min"}));
    oracle->add_option("instance", path, "instance CSV")->required();
    oracle->add_option("--beta", beta, "budget fraction for maxmin")->capture_default_str();
    oracle->add_option("--b", b, "cost exponent")->capture_default_str();

    auto* experiment = app.add_subcommand("experiment", "run a figure experiment and write CSV");
    std::string figure;
    std::uint64_t seed = 1;
    std::optional<int> trials;
    std::string out;
    bool serial = false;
    experiment->add_option("figure", figure, "fig2 | fig3 | fig4 | fig5")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5"}));
    experiment->add_option("--seed", seed, "master seed")->capture_default_str();
    experiment->add_option("--trials", trials, "trials per sweep point (figure default if omitted)");
    experiment->add_option("--out", out, "output CSV path")->required();
    experiment->add_option("--b", b, "cost exponent")->capture_default_str();
    experiment->add_flag("--serial", serial, "run trials on one thread");

    CLI11_PARSE(app, argc, argv);

    try {
        const CostModel cost(b);
        if (*experiment) {
            ExperimentConfig config = ExperimentConfig::defaults(parse_experiment(figure));
            config.master_seed = seed;
            config.b = b;
            config.output_path = out;
            if (trials) config.trials = *trials;
            const ExperimentTable table = run_experiment(config, serial ? Exec::Serial : Exec::Parallel);
            write_table(table, out);
            std::cout << "rows," << table.rows.size() << "\nout," << out << '\n';
            return 0;
        }

        const Instance inst = read_instance_csv(path);
        if (*solve) {
            const Schedule s = schedule_optimal_offline(inst);
            print("c_min", evaluate_cost(s, cost));
            print("c_min_online", evaluate_cost(schedule_online_even(inst), cost));
            print("c_base", baseline_cost(inst, cost));
            std::cout << "slot,load\n";
            const auto loads = s.loads();
            for (std::size_t t = 1; t < loads.size(); ++t) std::cout << t << ',' << format_real(loads[t]) << '\n';
        } else if (*full || *online) {
            const FullAttack fa = *full ? full_attack_dp(inst, cost) : online_edf_attack(inst, cost);
            print(*full ? "c_max" : "c_max_online", fa.cost);
            print_partition(fa.partition);
            print_plan(fa.plan);
        } else if (*limited) {
            const LimitedAttack la = limited_greedy_attack(inst, beta, cost);
            print("c_maxmin_lower", la.cost);
            print("whole_cliques", la.whole_cliques);
            print("partial_clique", la.partial_clique);
            std::cout << "budget," << la.budget << "\naltered," << la.plan.altered(inst).size() << '\n';
            print("realized_cost", realized_attack_cost(inst, la.plan, cost));
            if (inst.distinct_arrivals()) print("c_maxmin_upper", limited_attack_dp(inst, beta, cost));
            print_plan(la.plan);
        } else if (*bounds) {
            const double c_max = full_attack_dp(inst, cost).cost;
            const BoundReport r = make_bound_report(inst, b, c_max, beta);
            std::cout << "n," << r.n << "\nl_min," << r.l_min << "\nl_max," << r.l_max << '\n';
            print("total_energy", r.total_energy);
            std::cout << "arrival_span," << r.arrival_span << '\n';
            print("r_prop1", r.r_prop1);
            print("r_prop2", r.r_prop2);
            print("online_factor", r.prop1_factor);
            print("c_max_lower", r.prop2_lower);
            print("c_max", c_max);
            print("c_maxmin_lower_bound", r.prop3_lower);
            std::cout << "degenerate," << (r.degenerate ? "true" : "false") << '\n';
        } else if (*oracle) {
            if (oracle_kind == "pmax") {
                print("c_max", brute_force_pmax(inst, cost));
            } else if (oracle_kind == "maxmin") {
                print("c_maxmin", brute_force_maxmin(inst, beta, cost));
            } else {
                const Schedule s = schedule_optimal_offline(inst);
                const auto cert = check_min_optimality(inst, s, cost);
                print("c_min", evaluate_cost(s, cost));
                std::cout << "optimal," << (cert.optimal ? "true" : "false") << '\n';
                if (!cert.optimal) {
                    std::cout << "path,";
                    for (std::size_t i = 0; i < cert.path.size(); ++i) std::cout << (i ? " " : "") << cert.path[i];
                    std::cout << '\n';
                }
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
