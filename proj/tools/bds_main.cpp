// Command-line front end: scenario runs, link-budget table, traffic and
// mobility validation checks.

#include <cstdio>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bds/channel.hpp"
#include "bds/config.hpp"
#include "bds/metrics.hpp"
#include "bds/mobility.hpp"
#include "bds/report_io.hpp"
#include "bds/traffic.hpp"

namespace {

bds::CoopMode coop_mode_from_name(const std::string& name) {
    if (name == "on") return bds::CoopMode::On;
    if (name == "off") return bds::CoopMode::Off;
    if (name == "paired") return bds::CoopMode::Paired;
    throw CLI::ValidationError("--coop", "expected on, off or paired");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Battery Deposit Service simulator"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run paired coop/non-coop replications");
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint32_t replications = 10;
    std::string coop = "paired";
    std::vector<double> target_hours = {8.0, 10.0};
    std::string out_dir = "out";
    std::string strategy;
    double horizon_hours = 0.0;
    unsigned jobs = std::thread::hardware_concurrency();
    run->add_option("--config", config_path, "Scenario config file (flat key = value)");
    auto* seed_opt = run->add_option("--seed", seed, "Master seed");
    run->add_option("--replications", replications, "Number of replications")
        ->check(CLI::PositiveNumber);
    run->add_option("--coop", coop, "Cooperation arms: on, off or paired")
        ->check(CLI::IsMember({"on", "off", "paired"}));
    run->add_option("--targets", target_hours, "Target usage times, hours")->delimiter(',');
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--strategy", strategy, "Helper selection: proximity or max-battery")
        ->check(CLI::IsMember({"proximity", "max-battery"}));
    run->add_option("--horizon", horizon_hours, "Simulation horizon, hours")
        ->check(CLI::PositiveNumber);
    run->add_option("--jobs", jobs, "Concurrent replications (default: hardware threads)");

    // link-budget
    auto* lb = app.add_subcommand("link-budget", "Cellular vs D2D path-loss comparison table");
    bool lb_csv = false;
    lb->add_flag("--csv", lb_csv, "Emit CSV instead of the text table");

    // traffic-check
    auto* tc = app.add_subcommand("traffic-check", "Generator vs reference mixture rate");
    std::string tc_config;
    tc->add_option("--config", tc_config, "Scenario config file");

    // mobility-check
    auto* mc = app.add_subcommand("mobility-check", "Long-run location uniformity KS statistic");
    std::size_t mc_samples = 100000;
    double mc_interval = 100.0;
    std::uint64_t mc_seed = 1;
    std::string mc_config;
    mc->add_option("--samples", mc_samples, "Number of sampled positions");
    mc->add_option("--interval", mc_interval, "Sampling interval, seconds");
    mc->add_option("--seed", mc_seed, "RNG seed");
    mc->add_option("--config", mc_config, "Scenario config file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            bds::ExperimentSpec spec;
            if (!config_path.empty()) spec.cfg = bds::load_config_file(config_path);
            if (seed_opt->count() > 0) {
                spec.cfg.seed = seed;
                seed_set = true;
            }
            (void)seed_set;
            if (!strategy.empty()) spec.cfg.strategy = bds::strategy_from_name(strategy);
            if (horizon_hours > 0) spec.cfg.sim_end_s = horizon_hours * 3600.0;
            spec.cfg.validate();
            spec.mode = coop_mode_from_name(coop);
            spec.n_replications = replications;
            spec.targets_s.clear();
            for (double h : target_hours) spec.targets_s.push_back(h * 3600.0);
            spec.jobs = jobs;

            const bds::ExperimentResult result = bds::run_experiment(spec);
            bds::write_experiment_outputs(result, out_dir);
            std::cout << bds::summary_text(result);
            std::cout << "outputs written to " << out_dir << "/\n";
        } else if (lb->parsed()) {
            const auto rows = bds::link_budget_report(bds::LinkBudgetInputs{});
            std::cout << (lb_csv ? bds::link_budget_csv(rows) : bds::link_budget_text(rows));
        } else if (tc->parsed()) {
            bds::ScenarioConfig cfg;
            if (!tc_config.empty()) cfg = bds::load_config_file(tc_config);
            std::cout << bds::aggregate_rate_text(bds::aggregate_rate_check(cfg));
        } else if (mc->parsed()) {
            bds::ScenarioConfig cfg;
            if (!mc_config.empty()) cfg = bds::load_config_file(mc_config);
            const double ks =
                bds::stationary_uniformity_check(cfg, mc_samples, mc_interval, mc_seed);
            std::cout << "samples = " << mc_samples << "\n"
                      << "interval_s = " << bds::fmt_fixed(mc_interval, 3) << "\n"
                      << "ks_statistic = " << bds::fmt_fixed(ks, 6) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
