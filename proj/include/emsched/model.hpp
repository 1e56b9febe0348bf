#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "emsched/error.hpp"

namespace emsched {

enum class ResourceKind : std::size_t {
    kCores = 0,
    kMips = 1,
    kRam = 2,
    kNetBw = 3,
    kStorage = 4,
};

inline constexpr std::size_t kResourceCount = 5;

constexpr std::array<ResourceKind, kResourceCount> resource_kinds() {
    return {ResourceKind::kCores, ResourceKind::kMips, ResourceKind::kRam,
            ResourceKind::kNetBw, ResourceKind::kStorage};
}

const char* resource_name(ResourceKind kind);

// One scalar per resource kind. Units: cores, MIPS, MB, Mbit/s, GB.
class ResourceVector {
public:
    ResourceVector() = default;

    static ResourceVector of(double cores, double mips, double ram, double net_bw,
                             double storage) {
        ResourceVector v;
        v.values_ = {cores, mips, ram, net_bw, storage};
        return v;
    }

    double operator[](ResourceKind kind) const { return values_[static_cast<std::size_t>(kind)]; }
    double& operator[](ResourceKind kind) { return values_[static_cast<std::size_t>(kind)]; }

    double cores() const { return (*this)[ResourceKind::kCores]; }
    double mips() const { return (*this)[ResourceKind::kMips]; }
    double ram() const { return (*this)[ResourceKind::kRam]; }
    double net_bw() const { return (*this)[ResourceKind::kNetBw]; }
    double storage() const { return (*this)[ResourceKind::kStorage]; }

    ResourceVector& operator+=(const ResourceVector& rhs);
    ResourceVector& operator-=(const ResourceVector& rhs);
    friend ResourceVector operator+(ResourceVector lhs, const ResourceVector& rhs) {
        return lhs += rhs;
    }

    bool finite_nonnegative() const;

    // Componentwise lhs <= cap within an absolute-or-relative 1e-9 band.
    bool fits_within(const ResourceVector& cap) const;

private:
    std::array<double, kResourceCount> values_{};
};

// Half-open [start, end) in seconds; touching intervals do not overlap.
struct Interval {
    double start = 0;
    double end = 0;

    double duration() const { return end - start; }
    bool overlaps(const Interval& other) const {
        return start < other.end && other.start < end;
    }
};

// P(u) = p_idle + (p_max - p_idle) * u, watts.
struct PowerModel {
    double p_idle = 0;
    double p_max = 0;

    double dynamic_range() const { return p_max - p_idle; }
    bool operator==(const PowerModel&) const = default;
};

struct VmRequest {
    std::string id;
    ResourceVector demand;
    Interval interval;
    double per_core_mips = 0;

    double duration() const { return interval.duration(); }
};

struct HostSpec {
    std::string id;
    ResourceVector capacity;
    double per_core_mips = 0;
    PowerModel power;
};

// Outcome of one scheduling run: placed VMs map to host ids, the rest are
// rejected. Together they partition the input VM set.
struct Schedule {
    std::map<std::string, std::string> assignments; // vm id -> host id
    std::vector<std::string> rejected;              // in processing order
    std::string algorithm;
    std::string parameters;
};

// Throws on any violated invariant, returns the request unchanged otherwise.
VmRequest validate_vm_request(const VmRequest& vm);
HostSpec validate_host_spec(const HostSpec& host);

// Requires 0 <= utilization <= 1.
double power(const PowerModel& model, double utilization);

// Total MIPS per watt at full load; the tie-breaking figure of merit when a
// fresh host has to be opened.
double perf_per_watt(const HostSpec& host);

} // namespace emsched
