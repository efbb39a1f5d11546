#include "bds/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace bds {

double outage_probability(std::span<const UsageRecord> records, double target_s) {
    if (records.empty()) throw std::invalid_argument("outage_probability: no records");
    std::size_t outages = 0;
    for (const auto& r : records)
        if (r.depleted_at_s.has_value() && *r.depleted_at_s < target_s) ++outages;
    return static_cast<double>(outages) / static_cast<double>(records.size());
}

namespace {

std::size_t sample_index_for(std::span<const double> sample_times, double target_s) {
    for (std::size_t i = 0; i < sample_times.size(); ++i)
        if (std::abs(sample_times[i] - target_s) <= 1e-9) return i;
    throw std::invalid_argument("valueless_battery: target_s was not a battery sample time");
}

} // namespace

std::optional<double> valueless_battery(std::span<const UsageRecord> records,
                                        std::span<const double> sample_times, double target_s,
                                        double capacity_j) {
    if (records.empty()) throw std::invalid_argument("valueless_battery: no records");
    const std::size_t idx = sample_index_for(sample_times, target_s);

    double total = 0.0;
    std::size_t survivors = 0;
    for (const auto& r : records) {
        if (r.depleted_at_s.has_value() && *r.depleted_at_s < target_s) continue;
        total += r.battery_at_sample_j.at(idx);
        ++survivors;
    }
    if (survivors == 0) return std::nullopt;
    return total / static_cast<double>(survivors) / capacity_j;
}

UsageTimeDistribution usage_time_distribution(std::span<const UsageRecord> records,
                                              double bin_width_s, double horizon_s) {
    if (records.empty()) throw std::invalid_argument("usage_time_distribution: no records");
    if (bin_width_s <= 0) throw std::invalid_argument("usage_time_distribution: bin width <= 0");

    UsageTimeDistribution dist;
    dist.bin_width_s = bin_width_s;
    dist.horizon_s = horizon_s;
    const std::size_t n_bins =
        static_cast<std::size_t>(std::ceil(horizon_s / bin_width_s)) + 1;
    dist.bin_counts.assign(n_bins, 0);

    std::vector<double> times;
    times.reserve(records.size());
    for (const auto& r : records) {
        if (!r.depleted_at_s.has_value()) {
            ++dist.censored;
            continue;
        }
        times.push_back(*r.depleted_at_s);
        const auto bin = std::min(static_cast<std::size_t>(*r.depleted_at_s / bin_width_s),
                                  n_bins - 1);
        ++dist.bin_counts[bin];
    }
    std::sort(times.begin(), times.end());

    const double n = static_cast<double>(records.size());
    dist.cdf_points.reserve(times.size() + 1);
    for (std::size_t i = 0; i < times.size(); ++i) {
        // Collapse repeated times into the final step height.
        if (i + 1 < times.size() && times[i + 1] == times[i]) continue;
        dist.cdf_points.emplace_back(times[i], static_cast<double>(i + 1) / n);
    }
    if (dist.censored > 0)
        dist.cdf_points.emplace_back(horizon_s, static_cast<double>(times.size()) / n);
    return dist;
}

double mean_usage_time_s(std::span<const UsageRecord> records, double horizon_s) {
    if (records.empty()) throw std::invalid_argument("mean_usage_time_s: no records");
    double total = 0.0;
    for (const auto& r : records) total += r.depleted_at_s.value_or(horizon_s);
    return total / static_cast<double>(records.size());
}

std::optional<double> mean_depletion_time_s(std::span<const UsageRecord> records) {
    if (records.empty()) throw std::invalid_argument("mean_depletion_time_s: no records");
    double total = 0.0;
    std::size_t depleted = 0;
    for (const auto& r : records) {
        if (!r.depleted_at_s.has_value()) continue;
        total += *r.depleted_at_s;
        ++depleted;
    }
    if (depleted == 0) return std::nullopt;
    return total / static_cast<double>(depleted);
}

MetricSummary summarize(std::span<const double> per_replication_values) {
    if (per_replication_values.empty()) throw std::invalid_argument("summarize: no values");
    // Sorted accumulation makes the result independent of replication order.
    std::vector<double> values(per_replication_values.begin(), per_replication_values.end());
    std::sort(values.begin(), values.end());

    MetricSummary s;
    s.n = static_cast<std::uint32_t>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    if (s.n >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        const double var = ss / static_cast<double>(s.n - 1);
        s.half_width = 1.96 * std::sqrt(var / static_cast<double>(s.n));
    }
    return s;
}

ReplicationOutput run_replication(const ScenarioConfig& base_cfg, std::uint32_t replication,
                                  bool cooperative, std::span<const double> sample_times) {
    ScenarioConfig cfg = base_cfg;
    cfg.seed = replication_seed(base_cfg.seed, replication);
    cfg.cooperation_enabled = cooperative;

    SimState sim(cfg);
    sim.set_battery_sample_times({sample_times.begin(), sample_times.end()});

    ReplicationOutput out;
    out.replication = replication;
    out.cooperative = cooperative;
    out.records = sim.run();
    out.associations = sim.association_log();
    return out;
}

namespace {

struct ArmMetrics {
    std::vector<std::vector<double>> outage_per_target;            // [target][rep]
    std::vector<std::vector<double>> valueless_per_target;         // defined reps only
    std::vector<double> mean_usage;                                // [rep]
    std::vector<double> mean_depletion;                            // defined reps only
    std::uint64_t censored = 0;
};

ArmMetrics collect_arm_metrics(const ArmResult& arm, std::span<const double> targets,
                               const ScenarioConfig& cfg) {
    ArmMetrics m;
    m.outage_per_target.resize(targets.size());
    m.valueless_per_target.resize(targets.size());
    for (const ReplicationOutput& rep : arm.replications) {
        for (std::size_t t = 0; t < targets.size(); ++t) {
            m.outage_per_target[t].push_back(outage_probability(rep.records, targets[t]));
            const auto v = valueless_battery(rep.records, targets, targets[t],
                                             cfg.battery_capacity_j);
            if (v.has_value()) m.valueless_per_target[t].push_back(*v);
        }
        m.mean_usage.push_back(mean_usage_time_s(rep.records, cfg.sim_end_s));
        if (const auto d = mean_depletion_time_s(rep.records); d.has_value())
            m.mean_depletion.push_back(*d);
        for (const auto& r : rep.records)
            if (!r.depleted_at_s.has_value()) ++m.censored;
    }
    return m;
}

} // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.cfg.validate();
    if (spec.n_replications == 0)
        throw std::invalid_argument("run_experiment: n_replications must be >= 1");

    std::vector<double> targets = spec.targets_s;
    std::sort(targets.begin(), targets.end());
    for (double t : targets)
        if (t < 0 || t > spec.cfg.sim_end_s)
            throw std::invalid_argument("run_experiment: target outside [0, sim_end_s]");

    std::vector<bool> arm_coop;
    if (spec.mode == CoopMode::Paired)
        arm_coop = {false, true};
    else
        arm_coop = {spec.mode == CoopMode::On};

    // Task slots are preassigned, so parallel execution fills exactly the
    // same structure a serial run would.
    struct Task {
        std::size_t arm;
        std::uint32_t rep;
    };
    std::vector<Task> tasks;
    for (std::size_t a = 0; a < arm_coop.size(); ++a)
        for (std::uint32_t r = 0; r < spec.n_replications; ++r) tasks.push_back({a, r});

    std::vector<std::vector<ReplicationOutput>> outputs(arm_coop.size());
    for (auto& v : outputs) v.resize(spec.n_replications);

    const unsigned jobs = std::max(1u, spec.jobs);
    if (jobs == 1) {
        for (const Task& t : tasks)
            outputs[t.arm][t.rep] = run_replication(spec.cfg, t.rep, arm_coop[t.arm], targets);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mu;
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                try {
                    const Task& t = tasks[i];
                    outputs[t.arm][t.rep] =
                        run_replication(spec.cfg, t.rep, arm_coop[t.arm], targets);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < std::min<std::size_t>(jobs, tasks.size()); ++i)
            pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    ExperimentResult result;
    result.cfg = spec.cfg;
    result.targets_s = targets;
    result.n_replications = spec.n_replications;

    for (std::size_t a = 0; a < arm_coop.size(); ++a) {
        ArmResult arm;
        arm.cooperative = arm_coop[a];
        arm.replications = std::move(outputs[a]);
        for (const auto& rep : arm.replications)
            arm.pooled_records.insert(arm.pooled_records.end(), rep.records.begin(),
                                      rep.records.end());
        if (arm.cooperative)
            result.coop = std::move(arm);
        else
            result.noncoop = std::move(arm);
    }

    result.reports.reserve(targets.size());
    for (std::size_t t = 0; t < targets.size(); ++t) {
        OutageReport report;
        report.target_s = targets[t];
        report.n_replications = spec.n_replications;
        result.reports.push_back(report);
    }

    auto fill_arm = [&](const std::optional<ArmResult>& arm, bool coop) {
        if (!arm.has_value()) return;
        const ArmMetrics m = collect_arm_metrics(*arm, targets, spec.cfg);
        for (std::size_t t = 0; t < targets.size(); ++t) {
            auto& report = result.reports[t];
            const auto outage = summarize(m.outage_per_target[t]);
            std::optional<MetricSummary> valueless;
            if (!m.valueless_per_target[t].empty())
                valueless = summarize(m.valueless_per_target[t]);
            if (coop) {
                report.outage_coop = outage;
                report.valueless_coop = valueless;
            } else {
                report.outage_noncoop = outage;
                report.valueless_noncoop = valueless;
            }
        }
        const auto usage = summarize(m.mean_usage);
        std::optional<MetricSummary> depletion;
        if (!m.mean_depletion.empty()) depletion = summarize(m.mean_depletion);
        if (coop) {
            result.mean_usage_coop_s = usage;
            result.mean_depletion_coop_s = depletion;
            result.censored_coop = m.censored;
        } else {
            result.mean_usage_noncoop_s = usage;
            result.mean_depletion_noncoop_s = depletion;
            result.censored_noncoop = m.censored;
        }
    };
    fill_arm(result.coop, true);
    fill_arm(result.noncoop, false);

    return result;
}

} // namespace bds
