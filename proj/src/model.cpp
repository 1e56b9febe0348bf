#include "emsched/model.hpp"

#include <algorithm>
#include <cmath>

namespace emsched {

namespace {

constexpr double kRelTol = 1e-9;

bool nearly_equal(double a, double b) {
    return std::fabs(a - b) <= kRelTol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

} // namespace

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::NonPositiveDuration: return "NonPositiveDuration";
    case Errc::NegativeDemand: return "NegativeDemand";
    case Errc::InvalidCores: return "InvalidCores";
    case Errc::CoreMipsMismatch: return "CoreMipsMismatch";
    case Errc::InvalidCapacity: return "InvalidCapacity";
    case Errc::InvalidPowerModel: return "InvalidPowerModel";
    case Errc::UtilizationOutOfRange: return "UtilizationOutOfRange";
    case Errc::ZeroPowerModel: return "ZeroPowerModel";
    case Errc::ZeroCapacity: return "ZeroCapacity";
    case Errc::InfeasibleState: return "InfeasibleState";
    case Errc::HeterogeneousFleet: return "HeterogeneousFleet";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::ConfigParseError: return "ConfigParseError";
    case Errc::UnknownAlgorithm: return "UnknownAlgorithm";
    case Errc::InputDataError: return "InputDataError";
    }
    return "UnknownError";
}

const char* resource_name(ResourceKind kind) {
    switch (kind) {
    case ResourceKind::kCores: return "cores";
    case ResourceKind::kMips: return "mips";
    case ResourceKind::kRam: return "ram";
    case ResourceKind::kNetBw: return "net_bw";
    case ResourceKind::kStorage: return "storage";
    }
    return "unknown";
}

ResourceVector& ResourceVector::operator+=(const ResourceVector& rhs) {
    for (std::size_t i = 0; i < kResourceCount; ++i) values_[i] += rhs.values_[i];
    return *this;
}

ResourceVector& ResourceVector::operator-=(const ResourceVector& rhs) {
    for (std::size_t i = 0; i < kResourceCount; ++i) values_[i] -= rhs.values_[i];
    return *this;
}

bool ResourceVector::finite_nonnegative() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return std::isfinite(v) && v >= 0.0; });
}

bool ResourceVector::fits_within(const ResourceVector& cap) const {
    for (std::size_t i = 0; i < kResourceCount; ++i) {
        double limit = cap.values_[i] + kRelTol * std::max(1.0, cap.values_[i]);
        if (values_[i] > limit) return false;
    }
    return true;
}

VmRequest validate_vm_request(const VmRequest& vm) {
    if (!(vm.interval.end > vm.interval.start) || !std::isfinite(vm.interval.start) ||
        !std::isfinite(vm.interval.end)) {
        throw Error(Errc::NonPositiveDuration,
                    "vm '" + vm.id + "' has interval with end <= start");
    }
    if (!vm.demand.finite_nonnegative()) {
        throw Error(Errc::NegativeDemand,
                    "vm '" + vm.id + "' has a negative or non-finite demand component");
    }
    double cores = vm.demand.cores();
    if (cores < 1.0 || std::floor(cores) != cores) {
        throw Error(Errc::InvalidCores,
                    "vm '" + vm.id + "' must demand a whole number of cores >= 1");
    }
    if (!std::isfinite(vm.per_core_mips) || vm.per_core_mips < 0) {
        throw Error(Errc::NegativeDemand, "vm '" + vm.id + "' has invalid per-core MIPS");
    }
    if (!nearly_equal(vm.demand.mips(), cores * vm.per_core_mips)) {
        throw Error(Errc::CoreMipsMismatch,
                    "vm '" + vm.id + "' demand.mips != cores * per_core_mips");
    }
    return vm;
}

HostSpec validate_host_spec(const HostSpec& host) {
    if (!host.capacity.finite_nonnegative()) {
        throw Error(Errc::InvalidCapacity,
                    "host '" + host.id + "' has a negative or non-finite capacity component");
    }
    double cores = host.capacity.cores();
    if (cores < 1.0 || std::floor(cores) != cores) {
        throw Error(Errc::InvalidCores,
                    "host '" + host.id + "' must have a whole number of cores >= 1");
    }
    if (!std::isfinite(host.per_core_mips) || host.per_core_mips <= 0) {
        throw Error(Errc::InvalidCapacity,
                    "host '" + host.id + "' must have positive per-core MIPS");
    }
    if (!nearly_equal(host.capacity.mips(), cores * host.per_core_mips)) {
        throw Error(Errc::CoreMipsMismatch,
                    "host '" + host.id + "' capacity.mips != cores * per_core_mips");
    }
    const PowerModel& p = host.power;
    if (!std::isfinite(p.p_idle) || !std::isfinite(p.p_max) || p.p_idle < 0 ||
        p.p_max < p.p_idle) {
        throw Error(Errc::InvalidPowerModel,
                    "host '" + host.id + "' needs 0 <= p_idle <= p_max");
    }
    return host;
}

double power(const PowerModel& model, double utilization) {
    if (!(utilization >= 0.0 && utilization <= 1.0)) {
        throw Error(Errc::UtilizationOutOfRange,
                    "utilization " + std::to_string(utilization) + " outside [0, 1]");
    }
    return model.p_idle + model.dynamic_range() * utilization;
}

double perf_per_watt(const HostSpec& host) {
    if (host.power.p_max <= 0) {
        throw Error(Errc::ZeroPowerModel, "host '" + host.id + "' has p_max <= 0");
    }
    return host.capacity.mips() / host.power.p_max;
}

} // namespace emsched
