#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emsched/metrics.hpp"
#include "emsched/timeline.hpp"

namespace emsched {

enum class SortPolicy {
    kEarliestStartFirst,   // ST: ascending start, then ascending finish
    kLatestFinishFirst,    // LFT: descending finish
    kLongestDurationFirst, // LDTF: descending duration
    kCpuDemandDecreasing,  // descending total MIPS demand
};

enum class Algorithm {
    kEm,     // busy-time growth scaled by resource efficiency
    kMinDft, // busy-time growth alone
    kPabfd,  // best-fit decreasing on power increase
    kBfdSt,  // best-fit on power increase, start-time order
};

enum class UtilizationMode {
    kLiteral,           // utilization over the host's full VM list
    kOverlapRestricted, // only VMs overlapping the candidate's window
};

struct SchedulerConfig {
    Algorithm algorithm = Algorithm::kEm;
    SortPolicy sort_policy = SortPolicy::kEarliestStartFirst;
    WeightConfig weights;
    UtilizationMode utilization_mode = UtilizationMode::kLiteral;
    bool pabfd_opening_cost = true;

    std::string name() const;
};

struct ScheduleStats {
    std::uint64_t pair_visits = 0; // (vm, host) loop iterations
};

// Stable sort; equal keys keep input order.
std::vector<VmRequest> sort_vms(std::vector<VmRequest> vms, SortPolicy policy);

// True when the VM's per-core speed fits the host and, at every instant of
// the VM's half-open window, existing overlapping demand plus the VM stays
// within capacity in all resource kinds.
bool feasible(const HostState& host, const VmRequest& vm);

// Dynamic power added by the VM's CPU share, plus the idle floor when the
// host has no VMs yet and opening costs are charged.
double power_increase(const HostState& host, const VmRequest& vm,
                      bool opening_cost = true);

// Best idle host to open for a VM: maximum perf-per-watt among feasible idle
// hosts, ties to the lowest host index. Returns an index into `idle_hosts`.
std::optional<std::size_t> open_new_host(std::span<const HostSpec> idle_hosts,
                                         const VmRequest& vm);

Schedule schedule_em(std::span<const VmRequest> vms, std::span<const HostSpec> hosts,
                     const SchedulerConfig& config, ScheduleStats* stats = nullptr);

Schedule schedule_mindft(std::span<const VmRequest> vms, std::span<const HostSpec> hosts,
                         const SchedulerConfig& config, ScheduleStats* stats = nullptr);

Schedule schedule_pabfd(std::span<const VmRequest> vms, std::span<const HostSpec> hosts,
                        const SchedulerConfig& config, ScheduleStats* stats = nullptr);

Schedule schedule_bfd_st(std::span<const VmRequest> vms, std::span<const HostSpec> hosts,
                         const SchedulerConfig& config, ScheduleStats* stats = nullptr);

Schedule run_scheduler(std::span<const VmRequest> vms, std::span<const HostSpec> hosts,
                       const SchedulerConfig& config, ScheduleStats* stats = nullptr);

} // namespace emsched
