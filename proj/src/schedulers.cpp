#include "emsched/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace emsched {

namespace {

constexpr double kCapTol = 1e-9;

bool within(double demand, double cap) {
    return demand <= cap + kCapTol * std::max(1.0, cap);
}

bool fits_all(const ResourceVector& demand, const ResourceVector& cap) {
    for (ResourceKind kind : resource_kinds()) {
        if (!within(demand[kind], cap[kind])) return false;
    }
    return true;
}

// Utilization of the host with the candidate VM tentatively included,
// computed without mutating the host state.
std::array<double, kResourceCount> tentative_utilization(const HostState& host,
                                                         const VmRequest& vm,
                                                         UtilizationMode mode) {
    std::array<double, kResourceCount> u{};
    for (ResourceKind kind : resource_kinds()) {
        double cap = host.spec().capacity[kind];
        if (cap <= 0) {
            throw Error(Errc::ZeroCapacity, "host '" + host.spec().id +
                                                "' has zero capacity for " +
                                                resource_name(kind));
        }
        double sum = vm.demand[kind];
        if (mode == UtilizationMode::kLiteral) {
            sum += host.demand_sum()[kind];
        } else {
            for (const VmRequest& other : host.vms()) {
                if (other.interval.overlaps(vm.interval)) sum += other.demand[kind];
            }
        }
        u[static_cast<std::size_t>(kind)] = sum / cap;
    }
    return u;
}

struct Engine {
    std::span<const VmRequest> vms;
    std::span<const HostSpec> hosts;
    const SchedulerConfig& config;
    std::vector<HostState> states;
    Schedule schedule;
    ScheduleStats stats;

    Engine(std::span<const VmRequest> v, std::span<const HostSpec> h,
           const SchedulerConfig& c)
        : vms(v), hosts(h), config(c) {
        states.reserve(hosts.size());
        for (const HostSpec& spec : hosts) states.emplace_back(spec);
        schedule.algorithm = config.name();
        char buf[96];
        std::snprintf(buf, sizeof buf, "utilization=%s;w_time=%g;opening_cost=%d",
                      config.utilization_mode == UtilizationMode::kLiteral
                          ? "literal"
                          : "overlap",
                      config.weights.time_weight, config.pabfd_opening_cost ? 1 : 0);
        schedule.parameters = buf;
    }

    void place(const VmRequest& vm, std::optional<std::size_t> host_index) {
        if (host_index) {
            states[*host_index].add_vm(vm);
            schedule.assignments.emplace(vm.id, hosts[*host_index].id);
        } else {
            schedule.rejected.push_back(vm.id);
        }
    }

    // Core loop shared by the busy-time-aware heuristics: rank used feasible
    // hosts by `score`, fall back to opening the best idle host.
    template <typename ScoreFn>
    void run_busy_time_family(ScoreFn&& score) {
        auto order = sort_vms({vms.begin(), vms.end()}, config.sort_policy);
        for (const VmRequest& vm : order) {
            std::optional<std::size_t> best;
            double best_score = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < states.size(); ++j) {
                ++stats.pair_visits;
                const HostState& host = states[j];
                if (!host.used()) continue;
                if (!feasible(host, vm)) continue;
                double s = score(host, vm);
                if (s < best_score) {
                    best_score = s;
                    best = j;
                }
            }
            if (!best) best = open_idle(vm);
            place(vm, best);
        }
    }

    std::optional<std::size_t> open_idle(const VmRequest& vm) const {
        std::optional<std::size_t> best;
        double best_ppw = -1;
        for (std::size_t j = 0; j < states.size(); ++j) {
            const HostState& host = states[j];
            if (host.used()) continue;
            if (!feasible(host, vm)) continue;
            double ppw = perf_per_watt(host.spec());
            if (ppw > best_ppw) {
                best_ppw = ppw;
                best = j;
            }
        }
        return best;
    }

    void run_power_family() {
        auto order = sort_vms({vms.begin(), vms.end()}, config.sort_policy);
        for (const VmRequest& vm : order) {
            std::optional<std::size_t> best;
            double best_increase = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < states.size(); ++j) {
                ++stats.pair_visits;
                if (!feasible(states[j], vm)) continue;
                double inc = power_increase(states[j], vm, config.pabfd_opening_cost);
                if (inc < best_increase) {
                    best_increase = inc;
                    best = j;
                }
            }
            place(vm, best);
        }
    }

    Schedule finish(ScheduleStats* out_stats) {
        if (out_stats) *out_stats = stats;
        return std::move(schedule);
    }
};

const char* sort_policy_suffix(SortPolicy policy) {
    switch (policy) {
    case SortPolicy::kEarliestStartFirst: return "ST";
    case SortPolicy::kLatestFinishFirst: return "LFT";
    case SortPolicy::kLongestDurationFirst: return "LDTF";
    case SortPolicy::kCpuDemandDecreasing: return "CPU";
    }
    return "?";
}

} // namespace

std::string SchedulerConfig::name() const {
    switch (algorithm) {
    case Algorithm::kEm: return std::string("EM-") + sort_policy_suffix(sort_policy);
    case Algorithm::kMinDft:
        return std::string("MinDFT-") + sort_policy_suffix(sort_policy);
    case Algorithm::kPabfd: return "PABFD";
    case Algorithm::kBfdSt: return "BFD-ST";
    }
    return "?";
}

std::vector<VmRequest> sort_vms(std::vector<VmRequest> vms, SortPolicy policy) {
    auto key_less = [policy](const VmRequest& a, const VmRequest& b) {
        switch (policy) {
        case SortPolicy::kEarliestStartFirst:
            if (a.interval.start != b.interval.start)
                return a.interval.start < b.interval.start;
            return a.interval.end < b.interval.end;
        case SortPolicy::kLatestFinishFirst:
            return a.interval.end > b.interval.end;
        case SortPolicy::kLongestDurationFirst:
            return a.duration() > b.duration();
        case SortPolicy::kCpuDemandDecreasing:
            return a.demand.mips() > b.demand.mips();
        }
        return false;
    };
    std::stable_sort(vms.begin(), vms.end(), key_less);
    return vms;
}

bool feasible(const HostState& host, const VmRequest& vm) {
    const HostSpec& spec = host.spec();
    if (!within(vm.per_core_mips, spec.per_core_mips)) return false;
    if (!fits_all(vm.demand, spec.capacity)) return false;
    auto overlapping = host.overlapping(vm.interval);
    if (overlapping.empty()) return true;

    // Sweep the VM's window; demand is constant between VM boundaries, so it
    // suffices to re-check after each boundary event inside the window.
    struct Event {
        double t;
        const ResourceVector* demand;
        bool add;
    };
    std::vector<Event> events;
    ResourceVector load = vm.demand;
    for (const VmRequest* other : overlapping) {
        if (other->interval.start <= vm.interval.start) {
            load += other->demand;
        } else {
            events.push_back({other->interval.start, &other->demand, true});
        }
        if (other->interval.end < vm.interval.end) {
            events.push_back({other->interval.end, &other->demand, false});
        }
    }
    if (!fits_all(load, spec.capacity)) return false;
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.t < b.t; });
    std::size_t i = 0;
    while (i < events.size()) {
        double t = events[i].t;
        bool grew = false;
        for (; i < events.size() && events[i].t == t; ++i) {
            if (events[i].add) {
                load += *events[i].demand;
                grew = true;
            } else {
                load -= *events[i].demand;
            }
        }
        if (grew && !fits_all(load, spec.capacity)) return false;
    }
    return true;
}

double power_increase(const HostState& host, const VmRequest& vm, bool opening_cost) {
    const HostSpec& spec = host.spec();
    double cap = spec.capacity.mips();
    double increase = cap > 0 ? spec.power.dynamic_range() * vm.demand.mips() / cap : 0.0;
    if (!host.used() && opening_cost) increase += spec.power.p_idle;
    return increase;
}

std::optional<std::size_t> open_new_host(std::span<const HostSpec> idle_hosts,
                                         const VmRequest& vm) {
    std::optional<std::size_t> best;
    double best_ppw = -1;
    for (std::size_t j = 0; j < idle_hosts.size(); ++j) {
        HostState empty(idle_hosts[j]);
        if (!feasible(empty, vm)) continue;
        double ppw = perf_per_watt(idle_hosts[j]);
        if (ppw > best_ppw) {
            best_ppw = ppw;
            best = j;
        }
    }
    return best;
}

Schedule schedule_em(std::span<const VmRequest> vms, std::span<const HostSpec> hosts,
                     const SchedulerConfig& config, ScheduleStats* stats) {
    Engine engine(vms, hosts, config);
    engine.run_busy_time_family([&config](const HostState& host, const VmRequest& vm) {
        double t_diff = host.busy_time_increase(vm.interval);
        auto u = tentative_utilization(host, vm, config.utilization_mode);
        return ret_from(t_diff, u, config.weights);
    });
    return engine.finish(stats);
}

Schedule schedule_mindft(std::span<const VmRequest> vms, std::span<const HostSpec> hosts,
                         const SchedulerConfig& config, ScheduleStats* stats) {
    Engine engine(vms, hosts, config);
    engine.run_busy_time_family([](const HostState& host, const VmRequest& vm) {
        return host.busy_time_increase(vm.interval);
    });
    return engine.finish(stats);
}

Schedule schedule_pabfd(std::span<const VmRequest> vms, std::span<const HostSpec> hosts,
                        const SchedulerConfig& config, ScheduleStats* stats) {
    Engine engine(vms, hosts, config);
    engine.run_power_family();
    return engine.finish(stats);
}

Schedule schedule_bfd_st(std::span<const VmRequest> vms, std::span<const HostSpec> hosts,
                         const SchedulerConfig& config, ScheduleStats* stats) {
    Engine engine(vms, hosts, config);
    engine.run_power_family();
    return engine.finish(stats);
}

Schedule run_scheduler(std::span<const VmRequest> vms, std::span<const HostSpec> hosts,
                       const SchedulerConfig& config, ScheduleStats* stats) {
    SchedulerConfig effective = config;
    switch (config.algorithm) {
    case Algorithm::kEm:
        return schedule_em(vms, hosts, effective, stats);
    case Algorithm::kMinDft:
        return schedule_mindft(vms, hosts, effective, stats);
    case Algorithm::kPabfd:
        effective.sort_policy = SortPolicy::kCpuDemandDecreasing;
        return schedule_pabfd(vms, hosts, effective, stats);
    case Algorithm::kBfdSt:
        effective.sort_policy = SortPolicy::kEarliestStartFirst;
        return schedule_bfd_st(vms, hosts, effective, stats);
    }
    throw Error(Errc::UnknownAlgorithm, "unhandled algorithm enum value");
}

} // namespace emsched
