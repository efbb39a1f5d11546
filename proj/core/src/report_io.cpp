#include "bds/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bds {

namespace {

// Table IV reference values for the two calibration levers.
constexpr double kReferenceEConstJ = 0.015;
constexpr int kReferenceNRbs = 1;

void append_record_rows(std::ostringstream& os, const ArmResult& arm,
                        std::span<const double> sample_times) {
    for (const auto& rep : arm.replications) {
        for (const auto& r : rep.records) {
            os << rep.replication << ',' << (arm.cooperative ? 1 : 0) << ',' << r.ue_id << ','
               << fmt_fixed(r.initial_battery_j, 9) << ',';
            if (r.depleted_at_s.has_value()) os << fmt_fixed(*r.depleted_at_s, 6);
            os << ',' << fmt_fixed(r.remaining_j, 9) << ',' << r.bytes_sent_direct << ','
               << r.bytes_sent_d2d << ',' << r.bytes_relayed_for_others;
            for (std::size_t i = 0; i < sample_times.size(); ++i)
                os << ',' << fmt_fixed(r.battery_at_sample_j.at(i), 9);
            os << '\n';
        }
    }
}

void append_association_rows(std::ostringstream& os, const ArmResult& arm) {
    for (const auto& rep : arm.replications) {
        for (const auto& a : rep.associations) {
            os << rep.replication << ',' << (arm.cooperative ? 1 : 0) << ',' << a.helpee_id << ','
               << a.helper_id << ',' << fmt_fixed(a.established_at, 6) << ',';
            if (a.torn_down_at.has_value()) os << fmt_fixed(*a.torn_down_at, 6);
            os << ',' << a.bytes_relayed << ',' << teardown_reason_name(a.reason) << '\n';
        }
    }
}

std::string summary_metric(const std::optional<MetricSummary>& m, int decimals) {
    if (!m.has_value()) return "undefined";
    return fmt_fixed(m->mean, decimals) + " (half_width " + fmt_fixed(m->half_width, decimals) +
           ")";
}

} // namespace

std::string fmt_fixed(double v, int decimals) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string records_csv(const ExperimentResult& result) {
    std::ostringstream os;
    os << "replication,cooperative,ue_id,initial_battery_j,depleted_at_s,remaining_j,"
          "bytes_sent_direct,bytes_sent_d2d,bytes_relayed_for_others";
    for (double t : result.targets_s) os << ",battery_at_" << fmt_fixed(t, 0) << "s_j";
    os << '\n';
    if (result.noncoop.has_value()) append_record_rows(os, *result.noncoop, result.targets_s);
    if (result.coop.has_value()) append_record_rows(os, *result.coop, result.targets_s);
    return os.str();
}

std::string associations_csv(const ExperimentResult& result) {
    std::ostringstream os;
    os << "replication,cooperative,helpee_id,helper_id,established_at_s,torn_down_at_s,"
          "bytes_relayed,reason\n";
    if (result.noncoop.has_value()) append_association_rows(os, *result.noncoop);
    if (result.coop.has_value()) append_association_rows(os, *result.coop);
    return os.str();
}

std::string cdf_csv(const ArmResult& arm, double horizon_s) {
    const auto dist = usage_time_distribution(arm.pooled_records, 1800.0, horizon_s);
    std::ostringstream os;
    os << "time_s,cdf\n";
    for (const auto& [t, f] : dist.cdf_points)
        os << fmt_fixed(t, 6) << ',' << fmt_fixed(f, 9) << '\n';
    return os.str();
}

std::string summary_text(const ExperimentResult& result) {
    std::ostringstream os;
    os << "# battery deposit service experiment summary\n";
    os << "n_replications = " << result.n_replications << '\n';
    os << "arms = " << (result.coop.has_value() && result.noncoop.has_value()
                            ? "paired"
                            : (result.coop.has_value() ? "cooperative" : "non-cooperative"))
       << '\n';

    if (result.cfg.e_const_j != kReferenceEConstJ)
        os << "calibration_e_const_j = " << fmt_fixed(result.cfg.e_const_j, 6)
           << " # reference value " << fmt_fixed(kReferenceEConstJ, 6) << '\n';
    if (result.cfg.n_rbs != kReferenceNRbs)
        os << "calibration_n_rbs = " << result.cfg.n_rbs << " # reference value "
           << kReferenceNRbs << '\n';

    if (result.mean_usage_noncoop_s.has_value())
        os << "mean_usage_time_noncoop_s = " << summary_metric(result.mean_usage_noncoop_s, 3)
           << '\n';
    if (result.mean_usage_coop_s.has_value())
        os << "mean_usage_time_coop_s = " << summary_metric(result.mean_usage_coop_s, 3) << '\n';
    if (result.noncoop.has_value())
        os << "mean_depletion_time_noncoop_s = "
           << summary_metric(result.mean_depletion_noncoop_s, 3) << '\n';
    if (result.coop.has_value())
        os << "mean_depletion_time_coop_s = " << summary_metric(result.mean_depletion_coop_s, 3)
           << '\n';
    if (result.noncoop.has_value())
        os << "censored_at_horizon_noncoop = " << result.censored_noncoop << '\n';
    if (result.coop.has_value())
        os << "censored_at_horizon_coop = " << result.censored_coop << '\n';

    for (const auto& report : result.reports) {
        const std::string tag = fmt_fixed(report.target_s, 0) + "s";
        if (report.outage_noncoop.has_value())
            os << "outage_noncoop_at_" << tag << " = " << summary_metric(report.outage_noncoop, 6)
               << '\n';
        if (report.outage_coop.has_value())
            os << "outage_coop_at_" << tag << " = " << summary_metric(report.outage_coop, 6)
               << '\n';
        if (result.noncoop.has_value())
            os << "valueless_noncoop_at_" << tag << " = "
               << summary_metric(report.valueless_noncoop, 6) << '\n';
        if (result.coop.has_value())
            os << "valueless_coop_at_" << tag << " = " << summary_metric(report.valueless_coop, 6)
               << '\n';
    }

    os << "# effective configuration\n";
    os << config_to_text(result.cfg);
    return os.str();
}

std::string link_budget_text(const std::vector<LinkBudgetRow>& rows) {
    std::ostringstream os;
    os << "channel model    cellular_db  d2d_db  pl_diff_db  tx_power_diff_db\n";
    for (const auto& r : rows) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-15s %12.1f %7.1f %11.1f %17.1f\n", r.model.c_str(),
                      r.pl_cellular_db, r.pl_d2d_db, r.pl_diff_db, r.tx_power_diff_db);
        os << buf;
    }
    return os.str();
}

std::string link_budget_csv(const std::vector<LinkBudgetRow>& rows) {
    std::ostringstream os;
    os << "model,pl_cellular_db,pl_d2d_db,pl_diff_db,tx_power_diff_db\n";
    for (const auto& r : rows)
        os << r.model << ',' << fmt_fixed(r.pl_cellular_db, 3) << ',' << fmt_fixed(r.pl_d2d_db, 3)
           << ',' << fmt_fixed(r.pl_diff_db, 3) << ',' << fmt_fixed(r.tx_power_diff_db, 3) << '\n';
    return os.str();
}

std::string aggregate_rate_text(const AggregateRateReport& report) {
    std::ostringstream os;
    os << "generator_rate_bytes_per_s = " << fmt_fixed(report.generator_rate_bps, 6) << '\n'
       << "mixture_rate_bytes_per_s = " << fmt_fixed(report.mixture_rate_bps, 6) << '\n'
       << "ratio = " << fmt_fixed(report.ratio, 6) << '\n';
    for (const auto& row : reference_traffic_mixture())
        os << "mixture_row " << row.name << ": weight = " << fmt_fixed(row.weight, 2)
           << ", interarrival_s = " << fmt_fixed(row.interarrival_s, 3)
           << ", size_bytes = " << fmt_fixed(row.size_bytes, 1) << '\n';
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw std::runtime_error("cannot create directory " + p.parent_path().string() +
                                         ": " + ec.message());
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_experiment_outputs(const ExperimentResult& result, const std::string& out_dir) {
    const std::filesystem::path dir(out_dir);
    write_file((dir / "records.csv").string(), records_csv(result));
    write_file((dir / "associations.csv").string(), associations_csv(result));
    write_file((dir / "summary.txt").string(), summary_text(result));
    if (result.coop.has_value())
        write_file((dir / "cdf_coop.csv").string(), cdf_csv(*result.coop, result.cfg.sim_end_s));
    if (result.noncoop.has_value())
        write_file((dir / "cdf_noncoop.csv").string(),
                   cdf_csv(*result.noncoop, result.cfg.sim_end_s));
}

} // namespace bds
