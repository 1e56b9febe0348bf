#include "emsched/ingest.hpp"

#include "emsched/error.hpp"
#include "emsched/rand.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace emsched {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t begin = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > begin) out.push_back(s.substr(begin, i - begin));
    }
    return out;
}

[[noreturn]] void malformed(std::size_t line_no, std::string_view line,
                            const std::string& reason) {
    throw Error(Errc::MalformedLine, "line " + std::to_string(line_no) + ": " +
                                         reason + " in \"" + std::string(line) + "\"");
}

long long parse_required_int(std::string_view token, std::size_t line_no,
                             std::string_view line) {
    long long value = 0;
    auto [end, ec] = std::from_chars(token.begin(), token.end(), value);
    if (ec != std::errc{} || end != token.end()) {
        malformed(line_no, line, "non-integer field \"" + std::string(token) + "\"");
    }
    return value;
}

} // namespace

std::vector<SwfJob> parse_swf(std::istream& in) {
    std::vector<SwfJob> jobs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body = trim(line);
        if (body.empty() || body.front() == ';') continue;
        auto fields = split_fields(body);
        if (fields.size() < 5) {
            malformed(line_no, body, "expected at least 5 fields, got " +
                                         std::to_string(fields.size()));
        }
        SwfJob job;
        job.job_id = parse_required_int(fields[0], line_no, body);
        job.submit_time = parse_required_int(fields[1], line_no, body);
        job.wait_time = parse_required_int(fields[2], line_no, body);
        job.run_time = parse_required_int(fields[3], line_no, body);
        job.allocated_processors = parse_required_int(fields[4], line_no, body);
        if (fields.size() > 7) {
            job.requested_processors = parse_required_int(fields[7], line_no, body);
        }
        if (fields.size() > 8) {
            job.requested_time = parse_required_int(fields[8], line_no, body);
        }
        jobs.push_back(job);
    }
    return jobs;
}

std::vector<SwfJob> parse_swf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::InputDataError, "cannot open trace file \"" + path + "\"");
    }
    return parse_swf(in);
}

std::string to_swf_line(const SwfJob& job) {
    std::ostringstream out;
    out << job.job_id << ' ' << job.submit_time << ' ' << job.wait_time << ' '
        << job.run_time << ' ' << job.allocated_processors << " -1 -1 "
        << job.requested_processors << ' ' << job.requested_time;
    return out.str();
}

VmCatalog default_vm_catalog() {
    return {
        {2500, 8, 6800, 100, 1000},
        {2500, 2, 1700, 100, 422.5},
        {3250, 8, 68400, 100, 1000},
        {3250, 4, 34200, 100, 845},
        {3250, 2, 17100, 100, 422.5},
        {2000, 4, 15000, 100, 1690},
        {2000, 2, 7500, 100, 845},
        {1000, 1, 1875, 100, 211.25},
    };
}

VmRequest make_vm(const VmType& type, std::string id, Interval window) {
    VmRequest vm;
    vm.id = std::move(id);
    vm.demand = ResourceVector::of(type.cores, type.per_core_mips * type.cores,
                                   type.ram_mb, type.net_mbits, type.storage_gb);
    vm.interval = window;
    vm.per_core_mips = type.per_core_mips;
    validate_vm_request(vm);
    return vm;
}

ConversionResult jobs_to_vms(std::span<const SwfJob> jobs, const VmCatalog& catalog) {
    if (catalog.empty()) {
        throw Error(Errc::InputDataError, "vm catalog is empty");
    }
    ConversionResult result;
    std::size_t next_type = 0;
    for (const SwfJob& job : jobs) {
        double duration = static_cast<double>(
            job.requested_time > 0 ? job.requested_time : job.run_time);
        long long procs = job.requested_processors > 0 ? job.requested_processors
                                                       : job.allocated_processors;
        if (duration <= 0 || procs <= 0) {
            ++result.dropped_jobs;
            continue;
        }
        double wait = job.wait_time > 0 ? static_cast<double>(job.wait_time) : 0.0;
        double start = std::max(0.0, static_cast<double>(job.submit_time) + wait);
        for (long long k = 0; k < procs; ++k) {
            const VmType& type = catalog[next_type % catalog.size()];
            ++next_type;
            std::string id =
                "j" + std::to_string(job.job_id) + "-" + std::to_string(k);
            result.vms.push_back(
                make_vm(type, std::move(id), {start, start + duration}));
        }
    }
    return result;
}

HostSpec host_type_spec(const std::string& type, std::string id) {
    HostSpec spec;
    spec.id = std::move(id);
    if (type == "m1") {
        spec.per_core_mips = 3250;
        spec.capacity = ResourceVector::of(4, 13000, 30720, 10000, 10000);
        spec.power = {210, 300};
    } else if (type == "m2") {
        spec.per_core_mips = 3250;
        spec.capacity = ResourceVector::of(16, 52000, 140084, 10000, 10000);
        spec.power = {420, 600};
    } else if (type == "m3") {
        spec.per_core_mips = 2500;
        spec.capacity = ResourceVector::of(16, 40000, 14336, 10000, 10000);
        spec.power = {350, 500};
    } else {
        throw Error(Errc::InputDataError,
                    "unknown host type \"" + type + "\" (expected m1, m2 or m3)");
    }
    validate_host_spec(spec);
    return spec;
}

std::vector<HostSpec> default_fleet(const FleetCounts& counts) {
    std::vector<HostSpec> fleet;
    fleet.reserve(counts.total());
    for (std::size_t i = 0; i < counts.m1; ++i) {
        fleet.push_back(host_type_spec("m1", "m1-" + std::to_string(i)));
    }
    for (std::size_t i = 0; i < counts.m2; ++i) {
        fleet.push_back(host_type_spec("m2", "m2-" + std::to_string(i)));
    }
    for (std::size_t i = 0; i < counts.m3; ++i) {
        fleet.push_back(host_type_spec("m3", "m3-" + std::to_string(i)));
    }
    return fleet;
}

std::vector<HostSpec> default_fleet_total(std::size_t total) {
    static const char* kTypeNames[] = {"m1", "m2", "m3"};
    std::size_t counters[3] = {0, 0, 0};
    std::vector<HostSpec> fleet;
    fleet.reserve(total);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t t = k % 3;
        fleet.push_back(host_type_spec(
            kTypeNames[t],
            std::string(kTypeNames[t]) + "-" + std::to_string(counters[t]++)));
    }
    return fleet;
}

std::vector<VmRequest> synthetic_workload(const SyntheticSpec& spec) {
    return synthetic_workload(spec, default_vm_catalog());
}

std::vector<VmRequest> synthetic_workload(const SyntheticSpec& spec,
                                          const VmCatalog& catalog) {
    if (catalog.empty()) {
        throw Error(Errc::InputDataError, "vm catalog is empty");
    }
    if (spec.horizon_seconds < 1200) {
        throw Error(Errc::InputDataError,
                    "synthetic horizon must be at least 1200 seconds");
    }
    std::mt19937_64 gen(spec.seed);
    double max_duration = spec.horizon_seconds / 2;
    double log_lo = std::log(600.0);
    double log_hi = std::log(max_duration);
    std::vector<VmRequest> vms;
    vms.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
        const VmType& type = catalog[rng::index(gen, catalog.size())];
        double duration = std::floor(std::exp(rng::uniform(gen, log_lo, log_hi)));
        duration = std::clamp(duration, 600.0, max_duration);
        double start = std::floor(rng::uniform(gen, 0.0, spec.horizon_seconds));
        vms.push_back(
            make_vm(type, "s" + std::to_string(i), {start, start + duration}));
    }
    return vms;
}

} // namespace emsched
