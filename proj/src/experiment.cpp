#include "emsched/experiment.hpp"

#include "emsched/error.hpp"
#include "emsched/rand.hpp"
#include "emsched/timeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace emsched {

namespace {

std::string double_str(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

std::string trim_copy(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string item = trim_copy(s.substr(pos, comma - pos));
        if (!item.empty()) out.push_back(std::move(item));
        pos = comma + 1;
    }
    return out;
}

[[noreturn]] void config_error(const std::string& key, const std::string& detail) {
    throw Error(Errc::ConfigParseError, key + ": " + detail);
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0;
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || end != value.data() + value.size()) {
        config_error(key, "not a number: \"" + value + "\"");
    }
    return out;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || end != value.data() + value.size()) {
        config_error(key, "not a nonnegative integer: \"" + value + "\"");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    config_error(key, "not a boolean: \"" + value + "\"");
}

std::string resolve_relative(const std::string& path, const std::string& base_dir) {
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

SyntheticSpec& synthetic_of(ExperimentConfig& config) {
    if (!config.synthetic) config.synthetic.emplace();
    return *config.synthetic;
}

struct AlgorithmOutcome {
    double energy_joules_mean = 0;
    double busy_seconds_mean = 0;
    std::size_t hosts_used = 0;
    std::size_t placed = 0;
    std::size_t rejected = 0;
};

AlgorithmOutcome run_one_algorithm(const std::string& name,
                                   const ExperimentConfig& config,
                                   std::span<const VmRequest> vms,
                                   std::span<const HostSpec> hosts) {
    SchedulerConfig algo = parse_algorithm(name, config);
    std::vector<double> sweep;
    if (algo.algorithm == Algorithm::kEm && !config.time_weights.empty()) {
        sweep = config.time_weights;
    } else {
        sweep = {algo.weights.time_weight};
    }
    AlgorithmOutcome outcome;
    double energy_sum = 0;
    double busy_sum = 0;
    bool first = true;
    for (double w : sweep) {
        algo.weights.time_weight = w;
        Schedule schedule = run_scheduler(vms, hosts, algo);
        auto states = materialize(schedule, vms, hosts);
        energy_sum += total_energy(states);
        busy_sum += total_busy_time(states);
        if (first) {
            outcome.hosts_used = static_cast<std::size_t>(std::count_if(
                states.begin(), states.end(),
                [](const HostState& h) { return h.used(); }));
            outcome.placed = schedule.assignments.size();
            outcome.rejected = schedule.rejected.size();
            first = false;
        }
    }
    outcome.energy_joules_mean = energy_sum / static_cast<double>(sweep.size());
    outcome.busy_seconds_mean = busy_sum / static_cast<double>(sweep.size());
    return outcome;
}

} // namespace

const std::vector<std::string>& default_algorithm_names() {
    static const std::vector<std::string> kNames = {
        "EM-ST",     "EM-LFT",     "EM-LDTF", "MinDFT-ST",
        "MinDFT-LFT", "MinDFT-LDTF", "PABFD",   "BFD-ST",
    };
    return kNames;
}

SchedulerConfig parse_algorithm(const std::string& name,
                                const ExperimentConfig& config) {
    SchedulerConfig out;
    out.weights = config.weights;
    out.utilization_mode = config.utilization_mode;
    out.pabfd_opening_cost = config.pabfd_opening_cost;
    if (name == "EM-ST" || name == "MinDFT-ST") {
        out.sort_policy = SortPolicy::kEarliestStartFirst;
    } else if (name == "EM-LFT" || name == "MinDFT-LFT") {
        out.sort_policy = SortPolicy::kLatestFinishFirst;
    } else if (name == "EM-LDTF" || name == "MinDFT-LDTF") {
        out.sort_policy = SortPolicy::kLongestDurationFirst;
    } else if (name == "PABFD") {
        out.algorithm = Algorithm::kPabfd;
        out.sort_policy = SortPolicy::kCpuDemandDecreasing;
        return out;
    } else if (name == "BFD-ST") {
        out.algorithm = Algorithm::kBfdSt;
        out.sort_policy = SortPolicy::kEarliestStartFirst;
        return out;
    } else {
        std::string valid;
        for (const std::string& n : default_algorithm_names()) {
            if (!valid.empty()) valid += ", ";
            valid += n;
        }
        throw Error(Errc::UnknownAlgorithm,
                    "\"" + name + "\" (expected one of: " + valid + ")");
    }
    out.algorithm = name.starts_with("EM-") ? Algorithm::kEm : Algorithm::kMinDft;
    return out;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::ConfigParseError, "cannot open config file \"" + path + "\"");
    }
    std::string base_dir = std::filesystem::path(path).parent_path().string();
    ExperimentConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string body = trim_copy(line);
        if (body.empty()) continue;
        std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            throw Error(Errc::ConfigParseError,
                        "line " + std::to_string(line_no) +
                            ": expected \"key = value\", got \"" + body + "\"");
        }
        std::string key = trim_copy(body.substr(0, eq));
        std::string value = trim_copy(body.substr(eq + 1));
        if (key.empty()) config_error("line " + std::to_string(line_no), "empty key");

        if (key == "workload.trace") {
            config.trace_path = resolve_relative(value, base_dir);
        } else if (key == "workload.vms") {
            config.vms_path = resolve_relative(value, base_dir);
        } else if (key == "workload.first_jobs") {
            config.first_jobs = static_cast<std::size_t>(parse_uint(key, value));
        } else if (key == "workload.synthetic.count") {
            synthetic_of(config).count = static_cast<std::size_t>(parse_uint(key, value));
        } else if (key == "workload.synthetic.horizon") {
            synthetic_of(config).horizon_seconds = parse_double(key, value);
        } else if (key == "workload.synthetic.seed") {
            synthetic_of(config).seed = parse_uint(key, value);
        } else if (key == "fleet.m1") {
            config.fleet.m1 = static_cast<std::size_t>(parse_uint(key, value));
        } else if (key == "fleet.m2") {
            config.fleet.m2 = static_cast<std::size_t>(parse_uint(key, value));
        } else if (key == "fleet.m3") {
            config.fleet.m3 = static_cast<std::size_t>(parse_uint(key, value));
        } else if (key == "fleet.total") {
            config.fleet_total = static_cast<std::size_t>(parse_uint(key, value));
        } else if (key == "algorithms") {
            config.algorithms = split_list(value);
            if (config.algorithms.empty()) {
                config_error(key, "list is empty");
            }
        } else if (key == "baseline") {
            config.baseline = value;
        } else if (key == "weights.cores") {
            config.weights.resource_weights[ResourceKind::kCores] =
                parse_double(key, value);
        } else if (key == "weights.mips") {
            config.weights.resource_weights[ResourceKind::kMips] =
                parse_double(key, value);
        } else if (key == "weights.ram") {
            config.weights.resource_weights[ResourceKind::kRam] =
                parse_double(key, value);
        } else if (key == "weights.net_bw") {
            config.weights.resource_weights[ResourceKind::kNetBw] =
                parse_double(key, value);
        } else if (key == "weights.storage") {
            config.weights.resource_weights[ResourceKind::kStorage] =
                parse_double(key, value);
        } else if (key == "weights.time") {
            config.weights.time_weight = parse_double(key, value);
        } else if (key == "time_weights") {
            config.time_weights.clear();
            for (const std::string& item : split_list(value)) {
                config.time_weights.push_back(parse_double(key, item));
            }
        } else if (key == "utilization") {
            if (value == "literal") {
                config.utilization_mode = UtilizationMode::kLiteral;
            } else if (value == "overlap") {
                config.utilization_mode = UtilizationMode::kOverlapRestricted;
            } else {
                config_error(key, "expected \"literal\" or \"overlap\", got \"" +
                                      value + "\"");
            }
        } else if (key == "pabfd.opening_cost") {
            config.pabfd_opening_cost = parse_bool(key, value);
        } else if (key == "format") {
            if (value == "csv") {
                config.format = ReportFormat::kCsv;
            } else if (value == "json") {
                config.format = ReportFormat::kJson;
            } else if (value == "table") {
                config.format = ReportFormat::kTable;
            } else {
                config_error(key, "expected csv, json or table, got \"" + value + "\"");
            }
        } else if (key == "seed") {
            config.seed = parse_uint(key, value);
        } else if (key == "verify.instances") {
            config.verify_instances = static_cast<std::size_t>(parse_uint(key, value));
        } else {
            config_error(key, "unknown key");
        }
    }

    int sources = (!config.trace_path.empty() ? 1 : 0) +
                  (!config.vms_path.empty() ? 1 : 0) +
                  (config.synthetic.has_value() ? 1 : 0);
    if (sources > 1) {
        throw Error(Errc::ConfigParseError,
                    "more than one workload source set (trace, vms, synthetic)");
    }
    if (config.fleet_total > 0 && config.fleet.total() > 0) {
        throw Error(Errc::ConfigParseError,
                    "fleet.total conflicts with per-type fleet counts");
    }
    if (config.algorithms.empty()) {
        config.algorithms = default_algorithm_names();
    }
    for (const std::string& name : config.algorithms) {
        parse_algorithm(name, config);
    }
    return config;
}

std::vector<VmRequest> load_workload(const ExperimentConfig& config) {
    int sources = (!config.trace_path.empty() ? 1 : 0) +
                  (!config.vms_path.empty() ? 1 : 0) +
                  (config.synthetic.has_value() ? 1 : 0);
    if (sources == 0) {
        throw Error(Errc::ConfigParseError,
                    "no workload source: set workload.trace, workload.vms or "
                    "workload.synthetic.count");
    }
    if (sources > 1) {
        throw Error(Errc::ConfigParseError,
                    "more than one workload source set (trace, vms, synthetic)");
    }
    if (!config.trace_path.empty()) {
        auto jobs = parse_swf_file(config.trace_path);
        if (config.first_jobs && *config.first_jobs < jobs.size()) {
            jobs.resize(*config.first_jobs);
        }
        return jobs_to_vms(jobs, default_vm_catalog()).vms;
    }
    if (!config.vms_path.empty()) {
        return vms_from_csv_file(config.vms_path);
    }
    SyntheticSpec spec = *config.synthetic;
    return synthetic_workload(spec);
}

std::vector<HostSpec> build_fleet(const ExperimentConfig& config) {
    if (config.fleet_total > 0 && config.fleet.total() > 0) {
        throw Error(Errc::ConfigParseError,
                    "fleet.total conflicts with per-type fleet counts");
    }
    if (config.fleet_total > 0) return default_fleet_total(config.fleet_total);
    if (config.fleet.total() > 0) return default_fleet(config.fleet);
    throw Error(Errc::ConfigParseError,
                "fleet is empty: set fleet.m1/m2/m3 or fleet.total");
}

RunReport run_experiment(const ExperimentConfig& config,
                         std::span<const VmRequest> vms,
                         std::span<const HostSpec> hosts) {
    std::vector<std::string> names = config.algorithms;
    if (names.empty()) names = default_algorithm_names();
    RunReport report;
    report.vms_total = vms.size();
    for (const std::string& name : names) {
        AlgorithmOutcome outcome = run_one_algorithm(name, config, vms, hosts);
        ReportRow row;
        row.algorithm = parse_algorithm(name, config).name();
        row.hosts = hosts.size();
        row.hosts_used = outcome.hosts_used;
        row.vms_placed = outcome.placed;
        row.vms_rejected = outcome.rejected;
        row.busy_time_hours = outcome.busy_seconds_mean / 3600.0;
        row.energy_kwh = outcome.energy_joules_mean / 3.6e6;
        report.rows.push_back(std::move(row));
    }
    report.baseline_index = 0;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        if (report.rows[i].algorithm == config.baseline) {
            report.baseline_index = i;
            break;
        }
    }
    double base_energy = report.rows.empty()
                             ? 0.0
                             : report.rows[report.baseline_index].energy_kwh;
    for (ReportRow& row : report.rows) {
        if (base_energy <= 0) {
            row.normalized_energy = 1.0;
            row.saving_percent = 0.0;
        } else {
            row.normalized_energy = row.energy_kwh / base_energy;
            row.saving_percent = (1.0 - row.normalized_energy) * 100.0;
        }
    }
    return report;
}

RunReport run_experiment(const ExperimentConfig& config) {
    auto vms = load_workload(config);
    auto hosts = build_fleet(config);
    return run_experiment(config, vms, hosts);
}

std::string format_report(const RunReport& report, ReportFormat format) {
    if (format == ReportFormat::kCsv) {
        std::string out =
            "algorithm,hosts,vms_placed,vms_rejected,busy_time_hours,"
            "energy_kwh,normalized_energy,saving_percent\n";
        for (const ReportRow& row : report.rows) {
            out += row.algorithm;
            out += ',' + std::to_string(row.hosts);
            out += ',' + std::to_string(row.vms_placed);
            out += ',' + std::to_string(row.vms_rejected);
            out += ',' + double_str(row.busy_time_hours);
            out += ',' + double_str(row.energy_kwh);
            out += ',' + double_str(row.normalized_energy);
            out += ',' + double_str(row.saving_percent);
            out += '\n';
        }
        return out;
    }
    if (format == ReportFormat::kJson) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const ReportRow& row : report.rows) {
            nlohmann::ordered_json item;
            item["algorithm"] = row.algorithm;
            item["hosts"] = row.hosts;
            item["vms_placed"] = row.vms_placed;
            item["vms_rejected"] = row.vms_rejected;
            item["busy_time_hours"] = row.busy_time_hours;
            item["energy_kwh"] = row.energy_kwh;
            item["normalized_energy"] = row.normalized_energy;
            item["saving_percent"] = row.saving_percent;
            rows.push_back(std::move(item));
        }
        return rows.dump(2) + "\n";
    }

    std::size_t name_width = 9;
    for (const ReportRow& row : report.rows) {
        name_width = std::max(name_width, row.algorithm.size());
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-*s %6s %6s %8s %9s %12s %12s %8s %9s\n",
                  static_cast<int>(name_width), "algorithm", "hosts", "used",
                  "placed", "rejected", "busy_h", "energy_kwh", "norm",
                  "saving_%");
    std::string out = buf;
    for (const ReportRow& row : report.rows) {
        std::snprintf(buf, sizeof buf,
                      "%-*s %6zu %6zu %8zu %9zu %12.2f %12.2f %8.2f %9.2f\n",
                      static_cast<int>(name_width), row.algorithm.c_str(),
                      row.hosts, row.hosts_used, row.vms_placed,
                      row.vms_rejected, row.busy_time_hours, row.energy_kwh,
                      row.normalized_energy, row.saving_percent);
        out += buf;
    }
    return out;
}

bool IdentityReport::pass() const {
    return max_identity_error < 1e-9 && max_mapping_error < 1e-9 &&
           ordering_violations == 0;
}

std::string IdentityReport::summary() const {
    std::ostringstream out;
    out << "instances: " << instances << "\n"
        << "algorithms per instance: " << algorithms << "\n"
        << "max decomposition identity relative error: "
        << double_str(max_identity_error) << "\n"
        << "max placement-independence relative error: "
        << double_str(max_mapping_error) << "\n"
        << "busy-time/energy ordering violations: " << ordering_violations
        << " of " << ordering_pairs << " pairs\n"
        << (pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

namespace {

// Instance generation for the identity checks: VM shapes are drawn from the
// catalog entries that fit an empty host, then the whole instance is retried
// with a derived seed until every algorithm places every VM.
std::vector<VmRequest> random_instance(std::uint64_t seed,
                                        const HostSpec& host_type,
                                        std::size_t max_vms) {
    VmCatalog catalog;
    HostState probe(host_type);
    for (const VmType& type : default_vm_catalog()) {
        VmRequest vm = make_vm(type, "probe", {0, 3600});
        if (feasible(probe, vm)) catalog.push_back(type);
    }
    if (catalog.empty()) {
        throw Error(Errc::InputDataError,
                    "no catalog vm type fits host type for identity checks");
    }
    std::mt19937_64 gen(seed);
    std::size_t count = 1 + rng::index(gen, max_vms);
    double horizon = 7200;
    std::vector<VmRequest> vms;
    vms.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const VmType& type = catalog[rng::index(gen, catalog.size())];
        double duration = 600 + std::floor(rng::uniform(gen, 0.0, 3000.0));
        double start = std::floor(rng::uniform(gen, 0.0, horizon));
        vms.push_back(
            make_vm(type, "v" + std::to_string(i), {start, start + duration}));
    }
    return vms;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t instance,
                       std::uint64_t attempt) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (instance + 1) +
                      0xBF58476D1CE4E5B9ULL * (attempt + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

} // namespace

IdentityReport verify_identities(const ExperimentConfig& config) {
    FleetCounts counts = config.fleet;
    if (config.fleet_total > 0) {
        throw Error(Errc::HeterogeneousFleet,
                    "identity checks need a single host type; fleet.total mixes "
                    "types, set fleet.m1, fleet.m2 or fleet.m3 instead");
    }
    int kinds = (counts.m1 > 0 ? 1 : 0) + (counts.m2 > 0 ? 1 : 0) +
                (counts.m3 > 0 ? 1 : 0);
    if (kinds > 1) {
        throw Error(Errc::HeterogeneousFleet,
                    "identity checks need a single host type, got a mixed fleet");
    }
    if (kinds == 0) counts.m1 = 10;
    std::string type_name = counts.m1 > 0 ? "m1" : (counts.m2 > 0 ? "m2" : "m3");
    std::size_t host_count = std::max<std::size_t>(1, counts.total());

    std::vector<HostSpec> fleet;
    fleet.reserve(host_count);
    for (std::size_t i = 0; i < host_count; ++i) {
        fleet.push_back(host_type_spec(type_name, type_name + "-" + std::to_string(i)));
    }
    HostSpec probe_spec = fleet.front();

    std::vector<std::string> names = config.algorithms;
    if (names.empty()) names = default_algorithm_names();

    IdentityReport report;
    report.algorithms = names.size();
    constexpr std::size_t kMaxAttempts = 200;
    constexpr std::size_t kMaxVms = 50;

    for (std::size_t instance = 0; instance < config.verify_instances; ++instance) {
        std::vector<VmRequest> vms;
        std::vector<Schedule> schedules;
        bool feasible_instance = false;
        for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
            vms = random_instance(mix_seed(config.seed, instance, attempt),
                                   probe_spec, kMaxVms);
            schedules.clear();
            bool all_placed = true;
            for (const std::string& name : names) {
                SchedulerConfig algo = parse_algorithm(name, config);
                Schedule schedule = run_scheduler(vms, fleet, algo);
                if (!schedule.rejected.empty()) {
                    all_placed = false;
                    break;
                }
                schedules.push_back(std::move(schedule));
            }
            if (all_placed) {
                feasible_instance = true;
                break;
            }
        }
        if (!feasible_instance) {
            throw Error(Errc::InputDataError,
                        "could not generate a fully placeable instance after " +
                            std::to_string(kMaxAttempts) + " attempts");
        }

        struct Measured {
            double busy = 0;
            double energy = 0;
            double vm_term = 0;
        };
        std::vector<Measured> measured;
        measured.reserve(schedules.size());
        for (const Schedule& schedule : schedules) {
            auto states = materialize(schedule, vms, fleet);
            Measured m;
            m.busy = total_busy_time(states);
            m.energy = total_energy(states);
            EnergyDecomposition parts = energy_decomposition(states);
            m.vm_term = parts.vm_term;
            double scale = std::max(1.0, std::abs(m.energy));
            double identity_error = std::abs(m.energy - parts.total()) / scale;
            report.max_identity_error =
                std::max(report.max_identity_error, identity_error);
            measured.push_back(m);
        }
        for (std::size_t a = 0; a < measured.size(); ++a) {
            for (std::size_t b = a + 1; b < measured.size(); ++b) {
                double scale =
                    std::max({1.0, std::abs(measured[a].vm_term),
                              std::abs(measured[b].vm_term)});
                double mapping_error =
                    std::abs(measured[a].vm_term - measured[b].vm_term) / scale;
                report.max_mapping_error =
                    std::max(report.max_mapping_error, mapping_error);
                double busy_delta = measured[a].busy - measured[b].busy;
                if (busy_delta != 0.0) {
                    ++report.ordering_pairs;
                    double energy_delta = measured[a].energy - measured[b].energy;
                    if ((busy_delta > 0) != (energy_delta > 0)) {
                        ++report.ordering_violations;
                    }
                }
            }
        }
        ++report.instances;
    }
    return report;
}

std::string vms_to_csv(std::span<const VmRequest> vms) {
    std::string out = "id,start_s,duration_s,cores,mips,ram_mb,net_mbits,storage_gb\n";
    for (const VmRequest& vm : vms) {
        out += vm.id;
        out += ',' + double_str(vm.interval.start);
        out += ',' + double_str(vm.duration());
        out += ',' + double_str(vm.demand.cores());
        out += ',' + double_str(vm.demand.mips());
        out += ',' + double_str(vm.demand.ram());
        out += ',' + double_str(vm.demand.net_bw());
        out += ',' + double_str(vm.demand.storage());
        out += '\n';
    }
    return out;
}

std::vector<VmRequest> vms_from_csv(std::istream& in) {
    std::vector<VmRequest> vms;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = trim_copy(line);
        if (body.empty()) continue;
        if (!header_seen) {
            header_seen = true;
            if (body.starts_with("id,")) continue;
        }
        auto fields = split_list(body);
        if (fields.size() != 8) {
            throw Error(Errc::MalformedLine,
                        "line " + std::to_string(line_no) + ": expected 8 fields, got " +
                            std::to_string(fields.size()));
        }
        double numbers[7];
        for (std::size_t i = 0; i < 7; ++i) {
            const std::string& field = fields[i + 1];
            auto [end, ec] = std::from_chars(field.data(),
                                             field.data() + field.size(), numbers[i]);
            if (ec != std::errc{} || end != field.data() + field.size()) {
                throw Error(Errc::MalformedLine,
                            "line " + std::to_string(line_no) +
                                ": non-numeric field \"" + field + "\"");
            }
        }
        VmRequest vm;
        vm.id = fields[0];
        vm.interval = {numbers[0], numbers[0] + numbers[1]};
        vm.demand = ResourceVector::of(numbers[2], numbers[3], numbers[4],
                                       numbers[5], numbers[6]);
        vm.per_core_mips = numbers[2] > 0 ? numbers[3] / numbers[2] : 0;
        validate_vm_request(vm);
        vms.push_back(std::move(vm));
    }
    return vms;
}

std::vector<VmRequest> vms_from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::InputDataError, "cannot open vm file \"" + path + "\"");
    }
    return vms_from_csv(in);
}

ConversionResult convert_trace(const std::string& swf_path,
                               const std::string& out_path,
                               std::optional<std::size_t> first_jobs) {
    auto jobs = parse_swf_file(swf_path);
    if (first_jobs && *first_jobs < jobs.size()) {
        jobs.resize(*first_jobs);
    }
    ConversionResult result = jobs_to_vms(jobs, default_vm_catalog());
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw Error(Errc::InputDataError, "cannot write \"" + out_path + "\"");
    }
    out << vms_to_csv(result.vms);
    return result;
}

} // namespace emsched
