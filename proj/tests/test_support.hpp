#pragma once

// Random small instances and brute-force helpers shared by the test suites.
// Nothing here calls into the code under test except the model types.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "sgrid/model.hpp"

namespace sgrid::testing {

struct SmallSpec {
    int min_jobs = 1;
    int max_jobs = 6;
    int max_start = 10;   // arrivals drawn from [1, max_start]
    int max_window = 4;   // window length in slots (allowance + 1)
    int min_window = 1;
    double energy_low = 1.0;
    double energy_high = 5.0;
    bool distinct_arrivals = false;
};

inline Instance random_instance(std::mt19937_64& rng, const SmallSpec& spec) {
    std::uniform_int_distribution<int> count(spec.min_jobs, spec.max_jobs);
    std::uniform_int_distribution<int> start(1, spec.max_start);
    std::uniform_int_distribution<int> window(spec.min_window, spec.max_window);
    std::uniform_real_distribution<double> energy(spec.energy_low, spec.energy_high);
    const int n = count(rng);
    std::vector<int> arrivals;
    if (spec.distinct_arrivals) {
        std::vector<int> pool;
        for (int t = 1; t <= std::max(spec.max_start, n); ++t) pool.push_back(t);
        std::shuffle(pool.begin(), pool.end(), rng);
        arrivals.assign(pool.begin(), pool.begin() + n);
    } else {
        for (int i = 0; i < n; ++i) arrivals.push_back(start(rng));
    }
    std::vector<Job> jobs;
    for (int i = 0; i < n; ++i) {
        const int a = arrivals[static_cast<std::size_t>(i)];
        jobs.push_back({i + 1, a, a + window(rng) - 1, energy(rng)});
    }
    return Instance(std::move(jobs));
}

/// Cost of a load vector computed independently of CostModel.
inline double power_cost(const std::vector<double>& loads, double b) {
    double total = 0.0;
    for (double e : loads)
        if (e > 0.0) total += std::pow(e, b);
    return total;
}

/// a >= b up to a relative slack for summation-order differences.
inline bool at_least(double a, double b, double rel = 1e-9) {
    return a >= b - rel * std::max(1.0, std::abs(b));
}

}  // namespace sgrid::testing
