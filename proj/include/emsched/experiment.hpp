#pragma once

#include "emsched/ingest.hpp"
#include "emsched/schedulers.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace emsched {

enum class ReportFormat {
    kCsv,
    kJson,
    kTable,
};

struct ExperimentConfig {
    // Workload source: at most one of trace_path, vms_path, synthetic.
    std::string trace_path;
    std::string vms_path;
    std::optional<SyntheticSpec> synthetic;
    std::optional<std::size_t> first_jobs;

    // Fleet: either per-type counts or a round-robin total, not both.
    FleetCounts fleet;
    std::size_t fleet_total = 0;

    // Algorithm names in report order; empty means the full default set.
    std::vector<std::string> algorithms;
    std::string baseline = "PABFD";

    WeightConfig weights;
    std::vector<double> time_weights = {0.001, 0.01, 1.0, 100.0, 3600.0};
    UtilizationMode utilization_mode = UtilizationMode::kLiteral;
    bool pabfd_opening_cost = true;

    ReportFormat format = ReportFormat::kTable;
    std::uint64_t seed = 42;
    std::size_t verify_instances = 100;
};

// Full default algorithm roster, in canonical report order.
const std::vector<std::string>& default_algorithm_names();

// Flat "key = value" text format; '#' starts a comment. Relative workload
// paths resolve against the config file's directory.
ExperimentConfig load_config(const std::string& path);

// Maps a public algorithm name (e.g. "EM-LDTF", "PABFD") onto a scheduler
// configuration carrying the experiment's weights and flags.
SchedulerConfig parse_algorithm(const std::string& name,
                                const ExperimentConfig& config);

std::vector<VmRequest> load_workload(const ExperimentConfig& config);
std::vector<HostSpec> build_fleet(const ExperimentConfig& config);

struct ReportRow {
    std::string algorithm;
    std::size_t hosts = 0;
    std::size_t hosts_used = 0;
    std::size_t vms_placed = 0;
    std::size_t vms_rejected = 0;
    double busy_time_hours = 0;
    double energy_kwh = 0;
    double normalized_energy = 1.0;
    double saving_percent = 0;
};

struct RunReport {
    std::vector<ReportRow> rows;
    std::size_t baseline_index = 0;
    std::size_t vms_total = 0;
};

// Runs every configured algorithm on the given workload. Time-weight-aware
// algorithms run once per time_weights entry and report mean energy and busy
// time across the sweep; counters come from the first sweep run. Rows are
// normalized against the baseline row (normalized 1.0 when baseline energy
// is zero).
RunReport run_experiment(const ExperimentConfig& config,
                         std::span<const VmRequest> vms,
                         std::span<const HostSpec> hosts);

// Convenience wrapper: loads workload and fleet from the config first.
RunReport run_experiment(const ExperimentConfig& config);

std::string format_report(const RunReport& report, ReportFormat format);

struct IdentityReport {
    std::size_t instances = 0;
    std::size_t algorithms = 0;
    // Sweep-integrated energy vs idle-term + per-vm-term decomposition.
    double max_identity_error = 0;
    // Spread of the per-vm term across different placements of one instance.
    double max_mapping_error = 0;
    // Pairs where busy time and energy moved in opposite directions.
    std::size_t ordering_violations = 0;
    std::size_t ordering_pairs = 0;

    bool pass() const;
    std::string summary() const;
};

// Checks, over seeded random instances on a single-host-type fleet, that
// total energy equals the busy-time decomposition, that the per-vm term does
// not depend on the placement, and that busy-time order implies energy order.
IdentityReport verify_identities(const ExperimentConfig& config);

// SWF to VM request CSV. Returns the conversion, having written `out_path`.
ConversionResult convert_trace(const std::string& swf_path,
                               const std::string& out_path,
                               std::optional<std::size_t> first_jobs);

std::string vms_to_csv(std::span<const VmRequest> vms);
std::vector<VmRequest> vms_from_csv(std::istream& in);
std::vector<VmRequest> vms_from_csv_file(const std::string& path);

} // namespace emsched
