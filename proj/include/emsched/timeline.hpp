#pragma once

#include <span>
#include <utility>
#include <vector>

#include "emsched/model.hpp"

namespace emsched {

// Disjoint sorted intervals with a cached total measure. Touching parts are
// merged, which keeps membership queries a single binary search.
class IntervalUnion {
public:
    // Measure that inserting `iv` would add, without mutating.
    double added_length(const Interval& iv) const;

    void insert(const Interval& iv);

    double total_length() const { return total_; }
    const std::vector<Interval>& parts() const { return parts_; }

private:
    std::vector<Interval> parts_;
    double total_ = 0;
};

// Lebesgue measure of the union of arbitrary (possibly overlapping) intervals.
double union_length(std::span<const Interval> intervals);

// Piecewise-constant function of time: value values_[i] on
// [breakpoints_[i], breakpoints_[i+1]), zero outside the breakpoint range.
class StepFunction {
public:
    struct Segment {
        double start;
        double end;
        double value;
    };

    static StepFunction from_contributions(
        std::span<const std::pair<Interval, double>> contributions);

    double value_at(double t) const;
    double max_value() const;
    double integral() const;
    std::vector<Segment> segments() const;
    StepFunction merged_equal_adjacent() const;
    bool empty() const { return breakpoints_.empty(); }

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

// A host together with the VMs assigned to it so far. Keeps the running
// interval union and full-list demand sums incrementally maintained so the
// scheduler's inner loop stays cheap.
class HostState {
public:
    explicit HostState(HostSpec spec) : spec_(std::move(spec)) {}

    const HostSpec& spec() const { return spec_; }
    const std::vector<VmRequest>& vms() const { return vms_; }
    bool used() const { return !vms_.empty(); }

    void add_vm(const VmRequest& vm);

    double busy_time() const { return busy_.total_length(); }
    double busy_time_increase(const Interval& iv) const { return busy_.added_length(iv); }
    const IntervalUnion& busy_union() const { return busy_; }

    // Sums over every assigned VM, not restricted to any time window.
    const ResourceVector& demand_sum() const { return demand_sum_; }

    std::vector<const VmRequest*> overlapping(const Interval& iv) const;

private:
    HostSpec spec_;
    std::vector<VmRequest> vms_; // sorted by (start, end), stable on ties
    IntervalUnion busy_;
    ResourceVector demand_sum_;
};

double busy_time(const HostState& host);

// CPU utilization over time: sum of overlapping VM MIPS / host MIPS capacity.
StepFunction utilization_profile(const HostState& host);

// Raw demand of one resource kind over time.
StepFunction resource_load_profile(const HostState& host, ResourceKind kind);

// Integral of the power model over the host's busy union. The host draws
// nothing outside its busy time, including gaps between assigned VMs.
double host_energy(const HostState& host);

double total_busy_time(std::span<const HostState> hosts);
double total_energy(std::span<const HostState> hosts);

struct EnergyDecomposition {
    double idle_term = 0; // p_idle * sum of host busy times
    double vm_term = 0;   // sum over VMs of dynamic_range * u_i * duration_i

    double total() const { return idle_term + vm_term; }
};

// Valid only for a homogeneous fleet (one power model, one MIPS capacity);
// the per-VM term is mapping-independent there.
EnergyDecomposition energy_decomposition(std::span<const HostState> hosts);

// Rebuild per-host states from a schedule's assignment map.
std::vector<HostState> materialize(const Schedule& schedule,
                                   std::span<const VmRequest> vms,
                                   std::span<const HostSpec> hosts);

double total_busy_time(const Schedule& schedule, std::span<const VmRequest> vms,
                       std::span<const HostSpec> hosts);
double total_energy(const Schedule& schedule, std::span<const VmRequest> vms,
                    std::span<const HostSpec> hosts);
EnergyDecomposition energy_decomposition(const Schedule& schedule,
                                         std::span<const VmRequest> vms,
                                         std::span<const HostSpec> hosts);

} // namespace emsched
