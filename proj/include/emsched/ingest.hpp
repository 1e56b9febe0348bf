#pragma once

#include "emsched/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace emsched {

// One line of a Standard Workload Format trace. Missing values are -1, per
// the format's own convention.
struct SwfJob {
    long long job_id = -1;
    long long submit_time = -1;
    long long wait_time = -1;
    long long run_time = -1;
    long long allocated_processors = -1;
    long long requested_processors = -1;
    long long requested_time = -1;

    bool operator==(const SwfJob&) const = default;
};

std::vector<SwfJob> parse_swf(std::istream& in);
std::vector<SwfJob> parse_swf_file(const std::string& path);

// Serializes the retained fields back to a valid trace line; parse_swf on the
// result reproduces the job.
std::string to_swf_line(const SwfJob& job);

struct VmType {
    double per_core_mips = 0;
    double cores = 0;
    double ram_mb = 0;
    double net_mbits = 0;
    double storage_gb = 0;
};

using VmCatalog = std::vector<VmType>;

// The eight stock VM shapes used when converting traces and generating
// synthetic workloads.
VmCatalog default_vm_catalog();

VmRequest make_vm(const VmType& type, std::string id, Interval window);

struct ConversionResult {
    std::vector<VmRequest> vms;
    std::size_t dropped_jobs = 0;
};

// One VM per requested processor, types assigned round-robin across the
// global VM sequence. Jobs with no positive duration or processor count are
// dropped and counted.
ConversionResult jobs_to_vms(std::span<const SwfJob> jobs, const VmCatalog& catalog);

struct FleetCounts {
    std::size_t m1 = 0;
    std::size_t m2 = 0;
    std::size_t m3 = 0;

    std::size_t total() const { return m1 + m2 + m3; }
};

// type is "m1", "m2" or "m3".
HostSpec host_type_spec(const std::string& type, std::string id);

std::vector<HostSpec> default_fleet(const FleetCounts& counts);

// Round-robins host types m1, m2, m3 until `total` hosts exist.
std::vector<HostSpec> default_fleet_total(std::size_t total);

struct SyntheticSpec {
    std::size_t count = 0;
    double horizon_seconds = 86400;
    std::uint64_t seed = 42;
};

// Deterministic for a given seed: types drawn uniformly from the catalog,
// starts uniform over [0, horizon), durations log-uniform over
// [600, horizon / 2], all on a one second grid.
std::vector<VmRequest> synthetic_workload(const SyntheticSpec& spec);
std::vector<VmRequest> synthetic_workload(const SyntheticSpec& spec,
                                          const VmCatalog& catalog);

} // namespace emsched
