#pragma once

#include <array>
#include <optional>

#include "emsched/timeline.hpp"

namespace emsched {

// Per-resource weights for the efficiency metric plus the weight applied to
// busy-time growth. Defaults follow the reciprocal-capacity convention for a
// mid-size host; cores carry no weight by default.
struct WeightConfig {
    ResourceVector resource_weights =
        ResourceVector::of(0.0, 940.0, 24414.0, 1.0, 0.0001);
    double time_weight = 1.0;
};

// Aggregate demand fraction U = sum(vm demand) / capacity for one resource.
// Sums over the host's full VM list by default, so values above 1 are
// possible; `overlap` restricts the sum to VMs overlapping that window.
double resource_utilization(const HostState& host, ResourceKind kind,
                            const std::optional<Interval>& overlap = {});

std::array<double, kResourceCount> utilization_vector(
    const HostState& host, const std::optional<Interval>& overlap = {});

// Weighted L2 norm of remaining capacity fractions: lower means the host is
// packed tighter. Zero exactly at full utilization in every weighted kind.
double resource_efficiency_from(const std::array<double, kResourceCount>& utilization,
                                const WeightConfig& weights);

double resource_efficiency(const HostState& host, const WeightConfig& weights,
                           const std::optional<Interval>& overlap = {});

// Ranking score for a candidate placement: busy-time growth scaled by the
// efficiency norm, collapsing to the norm alone when the placement adds no
// busy time.
double ret_from(double t_diff, const std::array<double, kResourceCount>& utilization,
                const WeightConfig& weights);

double ret_metric(double t_diff, const HostState& host, const WeightConfig& weights,
                  const std::optional<Interval>& overlap = {});

} // namespace emsched
