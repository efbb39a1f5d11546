#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bds/config.hpp"
#include "bds/kernel.hpp"

namespace bds {

// Fraction of UEs whose battery depleted before target_s. Throws on empty
// input.
double outage_probability(std::span<const UsageRecord> records, double target_s);

// Mean battery remaining at target_s over UEs that survived to target_s,
// as a fraction of capacity; nullopt when there are no survivors.
// sample_times must contain target_s (records carry one battery sample per
// entry, in the same order).
std::optional<double> valueless_battery(std::span<const UsageRecord> records,
                                        std::span<const double> sample_times, double target_s,
                                        double capacity_j);

struct UsageTimeDistribution {
    double bin_width_s = 0.0;
    double horizon_s = 0.0;
    std::vector<std::uint64_t> bin_counts;                // bin i covers [i*w, (i+1)*w)
    std::vector<std::pair<double, double>> cdf_points;    // (t, fraction depleted by t)
    std::uint64_t censored = 0;                           // survivors, right-censored at horizon
};

// Histogram and empirical CDF of depletion times; survivors contribute
// right-censored mass reported in `censored`. Throws on empty input or
// nonpositive bin width.
UsageTimeDistribution usage_time_distribution(std::span<const UsageRecord> records,
                                              double bin_width_s, double horizon_s);

// Mean usage time over UEs, with survivors counted at the horizon.
double mean_usage_time_s(std::span<const UsageRecord> records, double horizon_s);

// Mean of the recorded depletion instants; survivors are excluded (their
// count is reported separately). nullopt when nothing depleted.
std::optional<double> mean_depletion_time_s(std::span<const UsageRecord> records);

// Across-replication mean and normal-approximation 95% confidence half-width.
// Values are summed in sorted order, so the result is invariant under any
// permutation of the replication order.
struct MetricSummary {
    double mean = 0.0;
    double half_width = 0.0;
    std::uint32_t n = 0;
};

MetricSummary summarize(std::span<const double> per_replication_values);

enum class CoopMode { On, Off, Paired };

struct ExperimentSpec {
    ScenarioConfig cfg;
    CoopMode mode = CoopMode::Paired;
    std::uint32_t n_replications = 10;
    std::vector<double> targets_s = {8 * 3600.0, 10 * 3600.0};
    unsigned jobs = 1;
};

struct ReplicationOutput {
    std::uint32_t replication = 0;
    bool cooperative = false;
    std::vector<UsageRecord> records;
    std::vector<AssociationRecord> associations;
};

struct ArmResult {
    bool cooperative = false;
    std::vector<ReplicationOutput> replications; // indexed by replication number
    std::vector<UsageRecord> pooled_records;     // all replications concatenated
};

// Per-target aggregation across replications; arm entries are absent when
// that arm was not run (single-arm modes) or undefined (no survivors).
struct OutageReport {
    double target_s = 0.0;
    std::uint32_t n_replications = 0;
    std::optional<MetricSummary> outage_coop;
    std::optional<MetricSummary> outage_noncoop;
    std::optional<MetricSummary> valueless_coop;
    std::optional<MetricSummary> valueless_noncoop;
};

struct ExperimentResult {
    ScenarioConfig cfg; // effective base configuration
    std::vector<double> targets_s;
    std::uint32_t n_replications = 0;
    std::optional<ArmResult> coop;
    std::optional<ArmResult> noncoop;
    std::vector<OutageReport> reports;
    std::optional<MetricSummary> mean_usage_coop_s;
    std::optional<MetricSummary> mean_usage_noncoop_s;
    std::optional<MetricSummary> mean_depletion_coop_s;
    std::optional<MetricSummary> mean_depletion_noncoop_s;
    std::uint64_t censored_coop = 0;
    std::uint64_t censored_noncoop = 0;
};

// Runs the replication set (paired arms share per-replication seeds, giving
// common random numbers for traffic and mobility) and aggregates all
// metrics. jobs > 1 runs replications concurrently; results are identical to
// a serial run.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// One replication of one arm; used by run_experiment and directly by tests.
ReplicationOutput run_replication(const ScenarioConfig& base_cfg, std::uint32_t replication,
                                  bool cooperative, std::span<const double> sample_times);

} // namespace bds
