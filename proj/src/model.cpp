#include "sgrid/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace sgrid {

void validate_job(const Job& job) {
    if (job.id < 0) throw InvalidInput("job id must be non-negative");
    if (job.arrival < 1) throw InvalidInput("job " + std::to_string(job.id) + ": arrival must be >= 1");
    if (job.deadline < job.arrival)
        throw InvalidInput("job " + std::to_string(job.id) + ": deadline precedes arrival");
    if (!std::isfinite(job.energy) || job.energy <= 0.0)
        throw InvalidInput("job " + std::to_string(job.id) + ": energy must be positive and finite");
}

Instance::Instance(std::vector<Job> jobs) : jobs_(std::move(jobs)) {
    std::unordered_set<JobId> ids;
    for (const auto& job : jobs_) {
        validate_job(job);
        if (!ids.insert(job.id).second)
            throw InvalidInput("duplicate job id " + std::to_string(job.id));
        horizon_ = std::max(horizon_, job.deadline);
    }
    std::sort(jobs_.begin(), jobs_.end(), [](const Job& a, const Job& b) {
        return a.arrival != b.arrival ? a.arrival < b.arrival : a.id < b.id;
    });
}

std::size_t Instance::index_of(JobId id) const {
    for (std::size_t i = 0; i < jobs_.size(); ++i)
        if (jobs_[i].id == id) return i;
    throw InvalidInput("unknown job id " + std::to_string(id));
}

std::vector<Slot> Instance::endpoints() const {
    std::vector<Slot> x;
    x.reserve(2 * jobs_.size());
    for (const auto& job : jobs_) {
        x.push_back(job.arrival);
        x.push_back(job.deadline);
    }
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    return x;
}

std::vector<Job> Instance::contained(Slot k, Slot l) const {
    std::vector<Job> out;
    for (const auto& job : jobs_)
        if (job.arrival >= k && job.deadline <= l) out.push_back(job);
    return out;
}

double Instance::total_energy() const {
    return std::accumulate(jobs_.begin(), jobs_.end(), 0.0,
                           [](double acc, const Job& j) { return acc + j.energy; });
}

int Instance::min_allowance() const {
    int best = 0;
    for (std::size_t i = 0; i < jobs_.size(); ++i)
        best = i == 0 ? jobs_[i].allowance() : std::min(best, jobs_[i].allowance());
    return best;
}

int Instance::max_allowance() const {
    int best = 0;
    for (const auto& job : jobs_) best = std::max(best, job.allowance());
    return best;
}

bool Instance::distinct_arrivals() const {
    for (std::size_t i = 1; i < jobs_.size(); ++i)
        if (jobs_[i].arrival == jobs_[i - 1].arrival) return false;
    return true;
}

CostModel::CostModel(double exponent) : exponent_(exponent) {
    if (!std::isfinite(exponent) || exponent < 1.0)
        throw InvalidInput("cost exponent must be >= 1");
}

double CostModel::operator()(double load) const {
    if (load <= 0.0) return 0.0;
    if (exponent_ == 1.0) return load;
    if (exponent_ == 2.0) return load * load;
    return std::pow(load, exponent_);
}

Schedule::Schedule(const Instance& instance) : instance_(instance) {
    rows_.reserve(instance.size());
    for (const auto& job : instance.jobs())
        rows_.emplace_back(static_cast<std::size_t>(job.allowance() + 1), 0.0);
}

double Schedule::at(std::size_t index, Slot t) const {
    const Job& job = instance_[index];
    if (!job.contains(t)) return 0.0;
    return rows_[index][static_cast<std::size_t>(t - job.arrival)];
}

void Schedule::set(std::size_t index, Slot t, double amount) {
    const Job& job = instance_[index];
    if (!job.contains(t))
        throw InvalidInput("allocation for job " + std::to_string(job.id) + " outside its window");
    rows_[index][static_cast<std::size_t>(t - job.arrival)] = amount;
}

void Schedule::add(std::size_t index, Slot t, double amount) {
    set(index, t, at(index, t) + amount);
}

std::vector<double> Schedule::loads() const {
    std::vector<double> load(static_cast<std::size_t>(instance_.horizon()) + 1, 0.0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Slot a = instance_[i].arrival;
        for (std::size_t k = 0; k < rows_[i].size(); ++k)
            load[static_cast<std::size_t>(a) + k] += rows_[i][k];
    }
    return load;
}

void Schedule::validate(double tol) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Job& job = instance_[i];
        double sum = 0.0;
        for (double v : rows_[i]) {
            if (v < 0.0 || !std::isfinite(v))
                throw InvalidInput("job " + std::to_string(job.id) + " has an invalid allocation");
            sum += v;
        }
        if (std::abs(sum - job.energy) > tol * std::max(1.0, job.energy))
            throw InvalidInput("job " + std::to_string(job.id) + " receives " + format_real(sum) +
                               " of " + format_real(job.energy));
    }
}

Schedule inelastic_schedule(const Instance& instance) {
    Schedule s(instance);
    for (std::size_t i = 0; i < instance.size(); ++i) s.set(i, instance[i].arrival, instance[i].energy);
    return s;
}

std::set<JobId> AttackPlan::altered(const Instance& instance) const {
    std::set<JobId> out;
    for (const auto& [id, t] : compressed) {
        const Job& job = instance[instance.index_of(id)];
        if (job.arrival != t || job.deadline != t) out.insert(id);
    }
    return out;
}

void validate_plan(const Instance& instance, const AttackPlan& plan) {
    for (const auto& [id, t] : plan.compressed) {
        const Job& job = instance[instance.index_of(id)];
        if (!job.contains(t))
            throw InvalidInput("plan moves job " + std::to_string(id) + " to slot " + std::to_string(t) +
                               " outside [" + std::to_string(job.arrival) + ", " +
                               std::to_string(job.deadline) + "]");
    }
}

void validate_partition(const Instance& instance, const CliquePartition& partition) {
    std::set<JobId> seen;
    for (const auto& block : partition.blocks) {
        for (JobId id : block.members) {
            const Job& job = instance[instance.index_of(id)];
            if (!job.contains(block.slot))
                throw InvalidInput("job " + std::to_string(id) + " does not contain its block slot");
            if (!seen.insert(id).second)
                throw InvalidInput("job " + std::to_string(id) + " appears in two blocks");
        }
    }
    if (seen.size() != instance.size()) throw InvalidInput("partition does not cover every job");
}

Instance apply_attack(const Instance& instance, const AttackPlan& plan) {
    validate_plan(instance, plan);
    std::vector<Job> jobs(instance.jobs().begin(), instance.jobs().end());
    for (auto& job : jobs) {
        if (auto it = plan.compressed.find(job.id); it != plan.compressed.end()) {
            job.arrival = it->second;
            job.deadline = it->second;
        }
    }
    return Instance(std::move(jobs));
}

double load_cost(std::span<const double> loads, const CostModel& cost) {
    double total = 0.0;
    for (double e : loads) total += cost(e);
    return total;
}

double evaluate_cost(const Schedule& schedule, const CostModel& cost) {
    const auto loads = schedule.loads();
    return load_cost(loads, cost);
}

double baseline_cost(const Instance& instance, const CostModel& cost) {
    return evaluate_cost(inelastic_schedule(instance), cost);
}

int attack_budget(double beta, std::size_t n) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidInput("beta must lie in [0, 1]");
    return static_cast<int>(std::floor(beta * static_cast<double>(n) + 1e-9));
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

template <typename T>
T parse_number(const std::string& text, std::size_t line_no, const char* what) {
    std::istringstream in(text);
    T value{};
    in >> value;
    if (text.empty() || in.fail() || !in.eof())
        throw InvalidInput("line " + std::to_string(line_no) + ": malformed " + what + " '" + text + "'");
    return value;
}

}  // namespace

Instance read_instance_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<Job> jobs;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != "id,arrival,deadline,energy")
                throw InvalidInput("line " + std::to_string(line_no) +
                                   ": expected header 'id,arrival,deadline,energy'");
            header_seen = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 4)
            throw InvalidInput("line " + std::to_string(line_no) + ": expected 4 fields");
        Job job{parse_number<int>(fields[0], line_no, "id"), parse_number<int>(fields[1], line_no, "arrival"),
                parse_number<int>(fields[2], line_no, "deadline"),
                parse_number<double>(fields[3], line_no, "energy")};
        try {
            validate_job(job);
        } catch (const InvalidInput& e) {
            throw InvalidInput("line " + std::to_string(line_no) + ": " + e.what());
        }
        jobs.push_back(job);
    }
    if (!header_seen) throw InvalidInput("missing header 'id,arrival,deadline,energy'");
    return Instance(std::move(jobs));
}

Instance read_instance_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file " + path);
    return read_instance_csv(in);
}

void write_instance_csv(std::ostream& out, const Instance& instance) {
    out << "id,arrival,deadline,energy\n";
    for (const auto& job : instance.jobs())
        out << job.id << ',' << job.arrival << ',' << job.deadline << ',' << format_real(job.energy) << '\n';
}

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

}  // namespace sgrid
