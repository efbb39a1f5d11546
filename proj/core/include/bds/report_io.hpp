#pragma once

#include <string>

#include "bds/channel.hpp"
#include "bds/metrics.hpp"
#include "bds/traffic.hpp"

namespace bds {

// Fixed-decimal formatting used for every numeric output so golden files are
// byte-stable.
std::string fmt_fixed(double v, int decimals);

// One row per UE per replication per arm.
std::string records_csv(const ExperimentResult& result);

// Live and torn-down associations of every replication, for audit.
std::string associations_csv(const ExperimentResult& result);

// Two-column time_s,cdf table of the pooled usage-time distribution.
std::string cdf_csv(const ArmResult& arm, double horizon_s);

// key = value summary (units in the key names) including the effective
// configuration and any calibration deltas from the reference parameter
// table.
std::string summary_text(const ExperimentResult& result);

// Table of the cellular-vs-D2D link budget comparison.
std::string link_budget_text(const std::vector<LinkBudgetRow>& rows);
std::string link_budget_csv(const std::vector<LinkBudgetRow>& rows);

// Generator-vs-mixture aggregate rate validation.
std::string aggregate_rate_text(const AggregateRateReport& report);

// Writes content to path, creating parent directories; throws on I/O errors
// with the path in the message.
void write_file(const std::string& path, const std::string& content);

// Writes records.csv, associations.csv, summary.txt and per-arm CDF files
// into out_dir.
void write_experiment_outputs(const ExperimentResult& result, const std::string& out_dir);

} // namespace bds
