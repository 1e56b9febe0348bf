#include "emsched/timeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace emsched {

namespace {

constexpr double kUtilizationSlack = 1e-9;

} // namespace

double IntervalUnion::added_length(const Interval& iv) const {
    // Parts ending exactly at iv.start cannot overlap a half-open interval.
    auto it = std::lower_bound(parts_.begin(), parts_.end(), iv.start,
                               [](const Interval& p, double s) { return p.end <= s; });
    double overlap = 0;
    for (; it != parts_.end() && it->start < iv.end; ++it) {
        overlap += std::min(iv.end, it->end) - std::max(iv.start, it->start);
    }
    return std::max(0.0, iv.duration() - overlap);
}

void IntervalUnion::insert(const Interval& iv) {
    total_ += added_length(iv);
    // Touching parts merge, so locate everything with part.end >= iv.start.
    auto first = std::lower_bound(parts_.begin(), parts_.end(), iv.start,
                                  [](const Interval& p, double s) { return p.end < s; });
    if (first == parts_.end() || first->start > iv.end) {
        parts_.insert(first, iv);
        return;
    }
    double merged_start = std::min(first->start, iv.start);
    double merged_end = iv.end;
    auto last = first;
    while (last != parts_.end() && last->start <= iv.end) {
        merged_end = std::max(merged_end, last->end);
        ++last;
    }
    *first = {merged_start, merged_end};
    parts_.erase(first + 1, last);
}

double union_length(std::span<const Interval> intervals) {
    if (intervals.empty()) return 0;
    std::vector<Interval> sorted(intervals.begin(), intervals.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    double total = 0;
    double cur_start = sorted.front().start;
    double cur_end = sorted.front().end;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].start > cur_end) {
            total += cur_end - cur_start;
            cur_start = sorted[i].start;
            cur_end = sorted[i].end;
        } else {
            cur_end = std::max(cur_end, sorted[i].end);
        }
    }
    return total + (cur_end - cur_start);
}

StepFunction StepFunction::from_contributions(
    std::span<const std::pair<Interval, double>> contributions) {
    std::map<double, double> deltas;
    for (const auto& [iv, value] : contributions) {
        if (value == 0.0 || iv.duration() <= 0) continue;
        deltas[iv.start] += value;
        deltas[iv.end] -= value;
    }
    StepFunction f;
    f.breakpoints_.reserve(deltas.size());
    f.values_.reserve(deltas.size());
    double running = 0;
    for (const auto& [t, d] : deltas) {
        f.breakpoints_.push_back(t);
        running += d;
        f.values_.push_back(running);
    }
    if (!f.values_.empty()) f.values_.pop_back(); // nothing after the last breakpoint
    return f;
}

double StepFunction::value_at(double t) const {
    if (breakpoints_.empty() || t < breakpoints_.front() || t >= breakpoints_.back()) {
        return 0;
    }
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepFunction::max_value() const {
    double m = 0;
    for (double v : values_) m = std::max(m, v);
    return m;
}

double StepFunction::integral() const {
    double sum = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        sum += values_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
    }
    return sum;
}

std::vector<StepFunction::Segment> StepFunction::segments() const {
    std::vector<Segment> out;
    out.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        out.push_back({breakpoints_[i], breakpoints_[i + 1], values_[i]});
    }
    return out;
}

StepFunction StepFunction::merged_equal_adjacent() const {
    StepFunction f;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!f.values_.empty() && f.values_.back() == values_[i]) continue;
        f.breakpoints_.push_back(breakpoints_[i]);
        f.values_.push_back(values_[i]);
    }
    if (!f.breakpoints_.empty()) f.breakpoints_.push_back(breakpoints_.back());
    return f;
}

void HostState::add_vm(const VmRequest& vm) {
    auto pos = std::upper_bound(vms_.begin(), vms_.end(), vm,
                                [](const VmRequest& a, const VmRequest& b) {
                                    if (a.interval.start != b.interval.start)
                                        return a.interval.start < b.interval.start;
                                    return a.interval.end < b.interval.end;
                                });
    vms_.insert(pos, vm);
    busy_.insert(vm.interval);
    demand_sum_ += vm.demand;
}

std::vector<const VmRequest*> HostState::overlapping(const Interval& iv) const {
    std::vector<const VmRequest*> out;
    for (const VmRequest& vm : vms_) {
        if (vm.interval.start >= iv.end) break; // sorted by start
        if (vm.interval.overlaps(iv)) out.push_back(&vm);
    }
    return out;
}

double busy_time(const HostState& host) { return host.busy_time(); }

StepFunction utilization_profile(const HostState& host) {
    double cap = host.spec().capacity.mips();
    std::vector<std::pair<Interval, double>> contributions;
    contributions.reserve(host.vms().size());
    for (const VmRequest& vm : host.vms()) {
        contributions.emplace_back(vm.interval, cap > 0 ? vm.demand.mips() / cap : 0.0);
    }
    return StepFunction::from_contributions(contributions);
}

StepFunction resource_load_profile(const HostState& host, ResourceKind kind) {
    std::vector<std::pair<Interval, double>> contributions;
    contributions.reserve(host.vms().size());
    for (const VmRequest& vm : host.vms()) {
        contributions.emplace_back(vm.interval, vm.demand[kind]);
    }
    return StepFunction::from_contributions(contributions);
}

double host_energy(const HostState& host) {
    if (!host.used()) return 0;
    double cap = host.spec().capacity.mips();

    // Event sweep over VM boundaries; a segment draws power only while at
    // least one VM covers it, at P(utilization of that segment).
    struct Event {
        double t;
        double du;
        int dcover;
    };
    std::vector<Event> events;
    events.reserve(host.vms().size() * 2);
    for (const VmRequest& vm : host.vms()) {
        double u = cap > 0 ? vm.demand.mips() / cap : 0.0;
        events.push_back({vm.interval.start, u, 1});
        events.push_back({vm.interval.end, -u, -1});
    }
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.t < b.t; });

    double energy = 0;
    double u = 0;
    int cover = 0;
    double prev_t = events.front().t;
    std::size_t i = 0;
    while (i < events.size()) {
        double t = events[i].t;
        if (cover > 0 && t > prev_t) {
            if (u > 1.0 + kUtilizationSlack) {
                throw Error(Errc::InfeasibleState,
                            "host '" + host.spec().id + "' utilization " +
                                std::to_string(u) + " exceeds capacity");
            }
            energy += power(host.spec().power, std::clamp(u, 0.0, 1.0)) * (t - prev_t);
        }
        while (i < events.size() && events[i].t == t) {
            u += events[i].du;
            cover += events[i].dcover;
            ++i;
        }
        prev_t = t;
    }
    return energy;
}

double total_busy_time(std::span<const HostState> hosts) {
    double sum = 0;
    for (const HostState& h : hosts) sum += h.busy_time();
    return sum;
}

double total_energy(std::span<const HostState> hosts) {
    double sum = 0;
    for (const HostState& h : hosts) sum += host_energy(h);
    return sum;
}

EnergyDecomposition energy_decomposition(std::span<const HostState> hosts) {
    EnergyDecomposition d;
    if (hosts.empty()) return d;
    const HostSpec& ref = hosts.front().spec();
    for (const HostState& h : hosts) {
        if (!(h.spec().power == ref.power) ||
            h.spec().capacity.mips() != ref.capacity.mips()) {
            throw Error(Errc::HeterogeneousFleet,
                        "energy decomposition needs one power model and one MIPS "
                        "capacity across the fleet");
        }
    }
    double cap = ref.capacity.mips();
    for (const HostState& h : hosts) {
        d.idle_term += ref.power.p_idle * h.busy_time();
        for (const VmRequest& vm : h.vms()) {
            double u = cap > 0 ? vm.demand.mips() / cap : 0.0;
            d.vm_term += ref.power.dynamic_range() * u * vm.duration();
        }
    }
    return d;
}

std::vector<HostState> materialize(const Schedule& schedule,
                                   std::span<const VmRequest> vms,
                                   std::span<const HostSpec> hosts) {
    std::vector<HostState> states;
    states.reserve(hosts.size());
    std::unordered_map<std::string, std::size_t> host_index;
    for (const HostSpec& h : hosts) {
        host_index.emplace(h.id, states.size());
        states.emplace_back(h);
    }
    for (const VmRequest& vm : vms) {
        auto assigned = schedule.assignments.find(vm.id);
        if (assigned == schedule.assignments.end()) continue;
        auto idx = host_index.find(assigned->second);
        if (idx == host_index.end()) {
            throw Error(Errc::InputDataError,
                        "schedule assigns vm '" + vm.id + "' to unknown host '" +
                            assigned->second + "'");
        }
        states[idx->second].add_vm(vm);
    }
    return states;
}

double total_busy_time(const Schedule& schedule, std::span<const VmRequest> vms,
                       std::span<const HostSpec> hosts) {
    auto states = materialize(schedule, vms, hosts);
    return total_busy_time(states);
}

double total_energy(const Schedule& schedule, std::span<const VmRequest> vms,
                    std::span<const HostSpec> hosts) {
    auto states = materialize(schedule, vms, hosts);
    return total_energy(states);
}

EnergyDecomposition energy_decomposition(const Schedule& schedule,
                                         std::span<const VmRequest> vms,
                                         std::span<const HostSpec> hosts) {
    auto states = materialize(schedule, vms, hosts);
    return energy_decomposition(states);
}

} // namespace emsched
