#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "emsched/experiment.hpp"
#include "emsched/rand.hpp"
#include "emsched/timeline.hpp"

#include "six_vm_fixture.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace emsched;

namespace {

// Every criterion prints exactly one summary line; nonzero time limits are
// part of the criterion and count toward its verdict.
struct Criterion {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& what) {
        if (condition) return;
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

template <typename Body>
void run_criterion(int number, double limit_seconds, Body&& body) {
    Criterion c;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("unexpected exception: ") + e.what());
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_seconds > 0 && elapsed > limit_seconds) {
        c.expect(false, "took " + num(elapsed) + "s, limit " + num(limit_seconds) + "s");
    }
    std::string line = "criterion " + std::to_string(number) + ": " +
                       (c.ok ? "PASS" : "FAIL");
    if (!c.ok) line += " (" + c.detail + ")";
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(c.ok, c.detail);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::size_t argmin_index(const std::vector<double>& scores) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
        if (scores[i] < scores[best]) best = i;
    }
    return best;
}

} // namespace

// Six-vm workload: the two-host consolidation pays 38 h of busy time, the
// three-host spread 23 h, and the efficiency-guided heuristic finds the
// spread under every sort policy. Exact integer-hour matches.
TEST_CASE("criterion_1") {
    run_criterion(1, 1.0, [](Criterion& c) {
        auto vms = sixvm::vms();

        auto two = sixvm::roomy_fleet(2);
        Schedule consolidated;
        consolidated.assignments = {{"vm1", "h0"}, {"vm2", "h0"}, {"vm3", "h1"},
                                    {"vm4", "h1"}, {"vm5", "h1"}, {"vm6", "h1"}};
        double packed_busy = total_busy_time(consolidated, vms, two);
        c.expect(packed_busy == sixvm::hours(38),
                 "consolidated packing busy time " + num(packed_busy / 3600) +
                     "h != 38h");

        auto three = sixvm::golden_fleet(3);
        Schedule spread;
        spread.assignments = {{"vm1", "h0"}, {"vm6", "h0"}, {"vm2", "h1"},
                              {"vm3", "h2"}, {"vm4", "h2"}, {"vm5", "h2"}};
        double spread_busy = total_busy_time(spread, vms, three);
        c.expect(spread_busy == sixvm::hours(23),
                 "spread packing busy time " + num(spread_busy / 3600) + "h != 23h");

        auto fleet = sixvm::golden_fleet();
        for (SortPolicy policy :
             {SortPolicy::kEarliestStartFirst, SortPolicy::kLatestFinishFirst,
              SortPolicy::kLongestDurationFirst}) {
            SchedulerConfig config;
            config.algorithm = Algorithm::kEm;
            config.sort_policy = policy;
            Schedule schedule = run_scheduler(vms, fleet, config);
            c.expect(schedule.rejected.empty(), config.name() + " rejected a vm");
            double busy = total_busy_time(schedule, vms, fleet);
            c.expect(busy == sixvm::hours(23),
                     config.name() + " busy time " + num(busy / 3600) + "h != 23h");
        }
    });
}

// Energy identity: on 100 seeded feasible instances over one host type, the
// sweep-integrated energy equals idle-draw * busy time plus the per-vm
// dynamic term, and the per-vm term is the same under every placement.
TEST_CASE("criterion_2") {
    run_criterion(2, 5.0, [](Criterion& c) {
        ExperimentConfig config;
        IdentityReport report = verify_identities(config);
        c.expect(report.instances == 100,
                 "ran " + std::to_string(report.instances) + " instances, not 100");
        c.expect(report.max_identity_error < 1e-9,
                 "identity error " + num(report.max_identity_error) + " >= 1e-9");
        c.expect(report.max_mapping_error < 1e-9,
                 "placement-independence error " + num(report.max_mapping_error) +
                     " >= 1e-9");
    });
}

// Ordering: across every pair of schedules of one instance, busy time and
// energy move in the same direction whenever busy time moves at all.
TEST_CASE("criterion_3") {
    run_criterion(3, 5.0, [](Criterion& c) {
        ExperimentConfig config;
        IdentityReport report = verify_identities(config);
        c.expect(report.ordering_pairs > 0, "no schedule pair differed in busy time");
        c.expect(report.ordering_violations == 0,
                 std::to_string(report.ordering_violations) +
                     " ordering violations of " +
                     std::to_string(report.ordering_pairs) + " pairs");
    });
}

// Interval-union measure matches a one-second-grid oracle exactly on 1,000
// random integer-endpoint interval sets (up to 100 intervals, horizon 1e5 s).
TEST_CASE("criterion_4") {
    run_criterion(4, 10.0, [](Criterion& c) {
        constexpr std::size_t kHorizon = 100000;
        std::mt19937_64 gen(20240601);
        std::vector<char> covered(kHorizon);
        for (int round = 0; round < 1000 && c.ok; ++round) {
            std::vector<Interval> intervals;
            std::size_t n_short = 1 + rng::index(gen, 98);
            for (std::size_t i = 0; i < n_short; ++i) {
                double start = std::floor(rng::uniform(gen, 0.0, kHorizon - 2000.0));
                double len = 1 + std::floor(rng::uniform(gen, 0.0, 1999.0));
                intervals.push_back({start, start + len});
            }
            for (int i = 0; i < 2; ++i) {
                double len = 1 + std::floor(rng::uniform(gen, 0.0, kHorizon / 2.0 - 1));
                double start = std::floor(rng::uniform(gen, 0.0, kHorizon - len));
                intervals.push_back({start, start + len});
            }

            std::fill(covered.begin(), covered.end(), 0);
            for (const Interval& iv : intervals) {
                for (std::size_t t = static_cast<std::size_t>(iv.start);
                     t < static_cast<std::size_t>(iv.end); ++t) {
                    covered[t] = 1;
                }
            }
            double oracle = 0;
            for (char cell : covered) oracle += cell;

            double measured = union_length(intervals);
            c.expect(measured == oracle, "round " + std::to_string(round) +
                                             ": union_length " + num(measured) +
                                             " != oracle " + num(oracle));
            IntervalUnion u;
            for (const Interval& iv : intervals) u.insert(iv);
            c.expect(u.total_length() == oracle,
                     "round " + std::to_string(round) + ": incremental union " +
                         num(u.total_length()) + " != oracle " + num(oracle));
        }
    });
}

// Ranking metric unit suite: the no-growth branch returns the efficiency
// norm bit-exactly, the growth branch returns growth * time weight * norm
// bit-exactly, the norm vanishes at full utilization, and the argmin host is
// invariant under common positive scaling of the resource weights.
TEST_CASE("criterion_5") {
    run_criterion(5, 0.0, [](Criterion& c) {
        std::mt19937_64 gen(555);
        auto random_weights = [&gen]() {
            WeightConfig w;
            for (ResourceKind kind : resource_kinds()) {
                w.resource_weights[kind] = std::exp(rng::uniform(gen, -3.0, 6.0));
            }
            w.time_weight = std::exp(rng::uniform(gen, -7.0, 9.0));
            return w;
        };

        std::array<double, kResourceCount> ones;
        ones.fill(1.0);
        for (int trial = 0; trial < 20 && c.ok; ++trial) {
            WeightConfig w = random_weights();
            c.expect(resource_efficiency_from(ones, w) == 0.0,
                     "efficiency norm nonzero at full utilization");
            double t = 1 + std::floor(rng::uniform(gen, 0.0, 5000.0));
            c.expect(ret_from(t, ones, w) == 0.0,
                     "score nonzero at full utilization");
        }

        for (int trial = 0; trial < 200 && c.ok; ++trial) {
            WeightConfig w = random_weights();
            std::array<double, kResourceCount> u;
            for (double& v : u) v = rng::uniform(gen, 0.0, 1.25);
            double re = resource_efficiency_from(u, w);
            c.expect(ret_from(0.0, u, w) == re,
                     "no-growth branch is not the efficiency norm");
            double t = 1 + std::floor(rng::uniform(gen, 0.0, 5000.0));
            c.expect(ret_from(t, u, w) == t * w.time_weight * re,
                     "growth branch is not growth * time weight * norm");
        }

        for (int set = 0; set < 50 && c.ok; ++set) {
            WeightConfig w = random_weights();
            std::vector<std::array<double, kResourceCount>> candidates(12);
            std::vector<double> growth(candidates.size());
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                for (double& v : candidates[i]) v = rng::uniform(gen, 0.0, 1.25);
                growth[i] =
                    i % 4 == 0 ? 0.0 : 1 + std::floor(rng::uniform(gen, 0.0, 5000.0));
            }
            auto scores_for = [&](const WeightConfig& weights) {
                std::vector<double> scores(candidates.size());
                for (std::size_t i = 0; i < candidates.size(); ++i) {
                    scores[i] = ret_from(growth[i], candidates[i], weights);
                }
                return scores;
            };
            std::size_t before = argmin_index(scores_for(w));

            WeightConfig scaled = w;
            double factor = std::exp(rng::uniform(gen, -6.0, 6.0));
            for (ResourceKind kind : resource_kinds()) {
                scaled.resource_weights[kind] = w.resource_weights[kind] * factor;
            }
            std::size_t after = argmin_index(scores_for(scaled));
            c.expect(before == after,
                     "set " + std::to_string(set) + ": argmin moved from " +
                         std::to_string(before) + " to " + std::to_string(after) +
                         " under weight scaling " + num(factor));
        }
    });
}

// Directional energy comparison on 10 seeded synthetic workloads (500 vms,
// 105 mixed hosts): the efficiency-guided duration-ordered variant beats the
// power best-fit baseline by at least 20% mean energy, and every
// efficiency-guided variant stays at or below start-ordered power best-fit.
TEST_CASE("criterion_6") {
    run_criterion(6, 60.0, [](Criterion& c) {
        const std::vector<std::string> names = {"EM-ST", "EM-LFT", "EM-LDTF",
                                                "PABFD", "BFD-ST"};
        ExperimentConfig defaults;
        auto fleet = default_fleet({35, 35, 35});
        std::array<double, 5> energy_sums{};
        for (int s = 0; s < 10; ++s) {
            SyntheticSpec spec;
            spec.count = 500;
            spec.horizon_seconds = 86400;
            spec.seed = 1000 + s;
            auto vms = synthetic_workload(spec);
            for (std::size_t i = 0; i < names.size(); ++i) {
                SchedulerConfig algo = parse_algorithm(names[i], defaults);
                Schedule schedule = run_scheduler(vms, fleet, algo);
                c.expect(schedule.rejected.empty(),
                         names[i] + " rejected " +
                             std::to_string(schedule.rejected.size()) +
                             " vms at seed " + std::to_string(spec.seed));
                energy_sums[i] += total_energy(schedule, vms, fleet);
            }
        }
        double em_st = energy_sums[0];
        double em_lft = energy_sums[1];
        double em_ldtf = energy_sums[2];
        double pabfd = energy_sums[3];
        double bfd_st = energy_sums[4];
        c.expect(em_ldtf <= pabfd, "mean EM-LDTF energy above PABFD");
        c.expect(em_st <= bfd_st, "mean EM-ST energy above BFD-ST");
        c.expect(em_lft <= bfd_st, "mean EM-LFT energy above BFD-ST");
        c.expect(em_ldtf <= bfd_st, "mean EM-LDTF energy above BFD-ST");
        double saving = (1.0 - em_ldtf / pabfd) * 100.0;
        c.expect(saving >= 20.0,
                 "EM-LDTF saving vs PABFD " + num(saving) + "% < 20%");
    });
}

// Scale smoke: 10,000 synthetic vms onto 1,000 hosts within five minutes,
// with the instrumented (vm, host) visit count equal to exactly n * m.
TEST_CASE("criterion_7") {
    run_criterion(7, 300.0, [](Criterion& c) {
        SyntheticSpec spec;
        spec.count = 10000;
        spec.horizon_seconds = 86400;
        spec.seed = 4242;
        auto vms = synthetic_workload(spec);
        auto fleet = default_fleet_total(1000);

        SchedulerConfig config; // efficiency-guided, start order
        ScheduleStats stats;
        Schedule schedule = run_scheduler(vms, fleet, config, &stats);
        c.expect(stats.pair_visits == 10000000ULL,
                 "pair visits " + std::to_string(stats.pair_visits) +
                     " != 10000000");
        c.expect(schedule.assignments.size() + schedule.rejected.size() == 10000,
                 "placed + rejected != 10000");
    });
}

// End-to-end determinism: the CLI compare subcommand on the bundled trace
// fixture produces byte-identical CSV across two runs.
TEST_CASE("criterion_8") {
    run_criterion(8, 0.0, [](Criterion& c) {
        std::string cli = EMSCHED_CLI_PATH;
        std::string conf = std::string(EMSCHED_FIXTURE_DIR) + "/compare.conf";
        auto tmp = std::filesystem::temp_directory_path();
        std::string out1 = (tmp / "emsched_accept_run1.csv").string();
        std::string out2 = (tmp / "emsched_accept_run2.csv").string();

        auto run_once = [&](const std::string& out_path) {
            std::string cmd = "\"" + cli + "\" compare --config \"" + conf +
                              "\" --out \"" + out_path + "\"";
            return std::system(cmd.c_str());
        };
        c.expect(run_once(out1) == 0, "first compare run exited nonzero");
        c.expect(run_once(out2) == 0, "second compare run exited nonzero");

        std::string first = read_file(out1);
        std::string second = read_file(out2);
        c.expect(!first.empty(), "first run produced no output");
        c.expect(first.starts_with("algorithm,hosts,"), "output is not the CSV report");
        c.expect(first == second, "runs differ byte for byte");
    });
}
