#include "emsched/metrics.hpp"

#include <cmath>

namespace emsched {

double resource_utilization(const HostState& host, ResourceKind kind,
                            const std::optional<Interval>& overlap) {
    double cap = host.spec().capacity[kind];
    if (cap <= 0) {
        throw Error(Errc::ZeroCapacity, "host '" + host.spec().id +
                                            "' has zero capacity for " +
                                            resource_name(kind));
    }
    if (!overlap) return host.demand_sum()[kind] / cap;
    double sum = 0;
    for (const VmRequest& vm : host.vms()) {
        if (vm.interval.overlaps(*overlap)) sum += vm.demand[kind];
    }
    return sum / cap;
}

std::array<double, kResourceCount> utilization_vector(
    const HostState& host, const std::optional<Interval>& overlap) {
    std::array<double, kResourceCount> u{};
    for (ResourceKind kind : resource_kinds()) {
        u[static_cast<std::size_t>(kind)] = resource_utilization(host, kind, overlap);
    }
    return u;
}

double resource_efficiency_from(const std::array<double, kResourceCount>& utilization,
                                const WeightConfig& weights) {
    double sum_sq = 0;
    for (ResourceKind kind : resource_kinds()) {
        auto i = static_cast<std::size_t>(kind);
        double slack = (1.0 - utilization[i]) * weights.resource_weights[kind];
        sum_sq += slack * slack;
    }
    return std::sqrt(sum_sq);
}

double resource_efficiency(const HostState& host, const WeightConfig& weights,
                           const std::optional<Interval>& overlap) {
    return resource_efficiency_from(utilization_vector(host, overlap), weights);
}

double ret_from(double t_diff, const std::array<double, kResourceCount>& utilization,
                const WeightConfig& weights) {
    double efficiency = resource_efficiency_from(utilization, weights);
    if (t_diff == 0.0) return efficiency;
    return t_diff * weights.time_weight * efficiency;
}

double ret_metric(double t_diff, const HostState& host, const WeightConfig& weights,
                  const std::optional<Interval>& overlap) {
    return ret_from(t_diff, utilization_vector(host, overlap), weights);
}

} // namespace emsched
