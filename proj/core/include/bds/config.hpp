#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace bds {

// Helper selection policy. VirtualCurrency is the paper's incentive-driven
// extension point; it is intentionally not implemented here.
enum class Strategy { Proximity, MaxBattery };

Strategy strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

// Power-control and rate parameters consumed by the channel module.
struct PowerParams {
    double p0_dbm = -69.0;
    double alpha = 0.8;
    double p_max_dbm = 24.0;
    int n_rbs = 1;
    int modulation_bits = 4;
    double code_rate = 1.0 / 3.0;
    double e_const_j = 0.015;
    double d2d_p_min_dbm = -40.0;
};

// Full scenario description. Defaults follow the simulation-parameter table
// of the underlying experiment; the trailing knobs are design decisions this
// simulator exposes explicitly.
struct ScenarioConfig {
    double cell_radius_m = 500.0;
    std::uint32_t n_ues = 500;
    double mean_interarrival_s = 30.0;
    double mean_burst_bytes = 7800.0;
    Range speed_range_mps{0.1, 3.0};
    Range pause_range_s{0.0, 300.0};
    Range walk_range_s{30.0, 300.0};
    double alpha = 0.8;
    double e_const_j = 0.015;
    double battery_capacity_j = 300.0;
    double p0_dbm = -69.0;
    double p_max_dbm = 24.0;
    int modulation_bits = 4; // QAM16
    double code_rate = 1.0 / 3.0;
    double fc_ghz = 2.0;
    double h_enb_m = 25.0;
    double h_ue_m = 1.5;
    int n_walls = 1;
    double gamma1 = 0.3;
    double gamma2 = 0.3;
    double coop_pl_threshold_db = 110.0;
    double coop_radius_m = 30.0;
    bool cooperation_enabled = true;
    int n_rbs = 1;
    double shadow_sigma_cellular_db = 8.0;
    double shadow_sigma_d2d_db = 4.0;
    double d2d_p_min_dbm = -40.0;
    std::uint64_t seed = 1;
    double sim_end_s = 86400.0; // 24 h horizon

    // Design-decision knobs.
    bool trigger_uses_shadowing = true;  // help trigger sees PL incl. current shadow sample
    bool shadow_per_burst = true;        // false: one fixed shadow realization per UE
    double assoc_max_duration_s = std::numeric_limits<double>::infinity();
    Strategy strategy = Strategy::Proximity;

    PowerParams power_params() const {
        return PowerParams{p0_dbm, alpha,     p_max_dbm, n_rbs,
                           modulation_bits,   code_rate, e_const_j,
                           d2d_p_min_dbm};
    }

    // Throws std::invalid_argument on any violated constraint.
    void validate() const;
};

// Applies one "key = value" assignment; throws on unknown keys or bad values.
void apply_config_entry(ScenarioConfig& cfg, const std::string& key, const std::string& value);

// Loads a flat key = value config file ('#' starts a comment). Unknown keys
// are errors. The result is validated before it is returned.
ScenarioConfig load_config_file(const std::string& path);

// Serializes every field in config-file syntax (used to echo the effective
// configuration into run summaries).
std::string config_to_text(const ScenarioConfig& cfg);

} // namespace bds
