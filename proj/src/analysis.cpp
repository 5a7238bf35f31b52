#include "sgrid/analysis.hpp"

#include <cmath>
#include <limits>

namespace sgrid {

namespace {

void check_exponent(double b) {
    if (!std::isfinite(b) || b < 1.0) throw InvalidInput("cost exponent must be >= 1");
}

}  // namespace

double overlap_ratio(const Instance& instance) {
    const int l_min = instance.min_allowance();
    if (instance.empty() || l_min < 1) return std::numeric_limits<double>::infinity();
    const int l_max = instance.max_allowance();
    return static_cast<double>((l_max + l_min - 1) / l_min + 1);
}

Bound prop1_factor(const Instance& instance, double b) {
    check_exponent(b);
    if (instance.empty()) throw InvalidInput("bounds need a non-empty instance");
    if (instance.min_allowance() < 1) return {0.0, true};
    return {std::pow(overlap_ratio(instance), -(b - 1.0)), false};
}

Bound prop2_lower_bound(const Instance& instance, double b) {
    check_exponent(b);
    if (instance.empty()) throw InvalidInput("bounds need a non-empty instance");
    const int l_min = instance.min_allowance();
    if (l_min < 1) return {0.0, true};
    const int span = instance[instance.size() - 1].arrival - instance[0].arrival;
    const double base = l_min * instance.total_energy() / static_cast<double>(2 * l_min + span);
    return {std::pow(base, b), false};
}

double prop2_expected_bound(std::size_t n, int l_min, double mean_energy, double mean_interarrival, double b) {
    check_exponent(b);
    if (n == 0 || l_min < 1) throw InvalidInput("expected bound needs n >= 1 and l_min >= 1");
    const double jobs = static_cast<double>(n);
    const double base = l_min * mean_energy * jobs / (2.0 * l_min + mean_interarrival * (jobs - 1.0));
    return std::pow(base, b);
}

double prop3_lower_bound(double c_max, double beta, double b) {
    check_exponent(b);
    if (c_max < 0.0 || !(beta >= 0.0 && beta <= 1.0)) throw InvalidInput("prop3 bound needs c_max >= 0, beta in [0, 1]");
    return std::pow(beta, b) * c_max / 2.0;
}

BoundReport make_bound_report(const Instance& instance, double b, double c_max, double beta) {
    BoundReport r;
    const Bound p1 = prop1_factor(instance, b);
    const Bound p2 = prop2_lower_bound(instance, b);
    r.prop1_factor = p1.value;
    r.prop2_lower = p2.value;
    r.prop3_lower = prop3_lower_bound(c_max, beta, b);
    r.degenerate = p1.degenerate || p2.degenerate;
    r.l_min = instance.min_allowance();
    r.l_max = instance.max_allowance();
    r.r_prop1 = overlap_ratio(instance);
    r.n = instance.size();
    r.total_energy = instance.total_energy();
    r.arrival_span = instance[instance.size() - 1].arrival - instance[0].arrival;
    r.r_prop2 = r.arrival_span == 0 ? std::numeric_limits<double>::infinity()
                                    : static_cast<double>(r.n) * r.l_min / r.arrival_span;
    return r;
}

}  // namespace sgrid
