#pragma once

#include <cstddef>

#include "sgrid/model.hpp"

namespace sgrid {

/// A closed-form bound. `degenerate` is set when the instance has a job with
/// zero allowance, which makes the bound vacuous; `value` is then 0.
struct Bound {
    double value = 0.0;
    bool degenerate = false;
};

/// ceil(l_max / l_min) + 1, the overlap ratio of the online attack guarantee.
[[nodiscard]] double overlap_ratio(const Instance& instance);

/// Guaranteed fraction of C_max reached by the online attack for C(E) = E^b:
/// overlap_ratio^-(b-1).
[[nodiscard]] Bound prop1_factor(const Instance& instance, double b);

/// Lower bound on C_max: (l_min * sum(e) / (2 l_min + a_n - a_1))^b.
[[nodiscard]] Bound prop2_lower_bound(const Instance& instance, double b);

/// The same lower bound for n jobs of average energy `mean_energy` arriving
/// every `mean_interarrival` slots on average.
[[nodiscard]] double prop2_expected_bound(std::size_t n, int l_min, double mean_energy, double mean_interarrival,
                                          double b);

/// beta^b * c_max / 2, guaranteed by the limited greedy attack.
[[nodiscard]] double prop3_lower_bound(double c_max, double beta, double b);

struct BoundReport {
    double prop1_factor = 0.0;
    double prop2_lower = 0.0;
    double prop3_lower = 0.0;
    double r_prop1 = 0.0;  // ceil(l_max / l_min) + 1
    double r_prop2 = 0.0;  // n * l_min / (a_n - a_1), infinite for a single arrival slot
    int l_min = 0;
    int l_max = 0;
    bool degenerate = false;
    std::size_t n = 0;
    double total_energy = 0.0;
    int arrival_span = 0;
};

[[nodiscard]] BoundReport make_bound_report(const Instance& instance, double b, double c_max, double beta);

}  // namespace sgrid
