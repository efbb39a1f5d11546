#include "bds/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bds {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    if (value == "inf") return std::numeric_limits<double>::infinity();
    // Fractions like "1/3" are accepted for exactness.
    if (const auto slash = value.find('/'); slash != std::string::npos) {
        const double num = parse_double(key, trim(value.substr(0, slash)));
        const double den = parse_double(key, trim(value.substr(slash + 1)));
        if (den == 0.0) throw std::invalid_argument("config key '" + key + "': division by zero");
        return num / den;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': bad numeric value '" + value + "'");
    }
    if (used != value.size())
        throw std::invalid_argument("config key '" + key + "': bad numeric value '" + value + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v < 0 || v != std::floor(v))
        throw std::invalid_argument("config key '" + key + "': expected a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

int parse_int(const std::string& key, const std::string& value) {
    return static_cast<int>(parse_u64(key, value));
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "on" || value == "1") return true;
    if (value == "false" || value == "off" || value == "0") return false;
    throw std::invalid_argument("config key '" + key + "': expected a boolean, got '" + value + "'");
}

Range parse_range(const std::string& key, const std::string& value) {
    std::string v = value;
    for (auto& c : v)
        if (c == ',') c = ' ';
    std::istringstream is(v);
    std::string lo, hi, rest;
    if (!(is >> lo >> hi) || (is >> rest))
        throw std::invalid_argument("config key '" + key + "': expected 'lo hi', got '" + value + "'");
    return Range{parse_double(key, lo), parse_double(key, hi)};
}

void check(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument("invalid scenario config: " + what);
}

void check_range(const Range& r, double min_lo, const std::string& what) {
    check(r.lo >= min_lo && r.hi >= r.lo, what);
}

} // namespace

Strategy strategy_from_name(const std::string& name) {
    if (name == "proximity") return Strategy::Proximity;
    if (name == "max-battery") return Strategy::MaxBattery;
    throw std::invalid_argument("unknown strategy '" + name + "' (expected proximity or max-battery)");
}

std::string strategy_name(Strategy s) {
    return s == Strategy::Proximity ? "proximity" : "max-battery";
}

void ScenarioConfig::validate() const {
    check(cell_radius_m > 0, "cell_radius_m must be > 0");
    check(n_ues >= 1, "n_ues must be >= 1");
    check(mean_interarrival_s > 0, "mean_interarrival_s must be > 0");
    check(mean_burst_bytes >= 1, "mean_burst_bytes must be >= 1");
    check_range(speed_range_mps, 0.0, "speed_range_mps must satisfy 0 <= lo <= hi");
    check(speed_range_mps.lo > 0, "speed_range_mps lower bound must be > 0");
    check_range(pause_range_s, 0.0, "pause_range_s must satisfy 0 <= lo <= hi");
    check_range(walk_range_s, 0.0, "walk_range_s must satisfy 0 <= lo <= hi");
    check(walk_range_s.lo > 0, "walk_range_s lower bound must be > 0");
    check(alpha >= 0 && alpha <= 1, "alpha must be in [0, 1]");
    check(e_const_j >= 0, "e_const_j must be >= 0");
    check(battery_capacity_j > 0, "battery_capacity_j must be > 0");
    check(p_max_dbm >= p0_dbm, "p_max_dbm must be >= p0_dbm");
    check(modulation_bits >= 1, "modulation_bits must be >= 1");
    check(code_rate > 0 && code_rate <= 1, "code_rate must be in (0, 1]");
    check(fc_ghz > 0, "fc_ghz must be > 0");
    check(h_enb_m > 0, "h_enb_m must be > 0");
    check(h_ue_m > 0, "h_ue_m must be > 0");
    check(n_walls >= 1, "n_walls must be >= 1");
    check(gamma1 > 0 && gamma1 < 1, "gamma1 must be in (0, 1)");
    check(gamma2 > 0 && gamma2 < 1, "gamma2 must be in (0, 1)");
    check(coop_radius_m > 0, "coop_radius_m must be > 0");
    check(n_rbs >= 1, "n_rbs must be >= 1");
    check(shadow_sigma_cellular_db >= 0, "shadow_sigma_cellular_db must be >= 0");
    check(shadow_sigma_d2d_db >= 0, "shadow_sigma_d2d_db must be >= 0");
    check(d2d_p_min_dbm <= p_max_dbm, "d2d_p_min_dbm must be <= p_max_dbm");
    check(sim_end_s > 0, "sim_end_s must be > 0");
    check(assoc_max_duration_s > 0, "assoc_max_duration_s must be > 0");
}

void apply_config_entry(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "cell_radius_m") cfg.cell_radius_m = parse_double(key, value);
    else if (key == "n_ues") cfg.n_ues = static_cast<std::uint32_t>(parse_u64(key, value));
    else if (key == "mean_interarrival_s") cfg.mean_interarrival_s = parse_double(key, value);
    else if (key == "mean_burst_bytes") cfg.mean_burst_bytes = parse_double(key, value);
    else if (key == "speed_range_mps") cfg.speed_range_mps = parse_range(key, value);
    else if (key == "pause_range_s") cfg.pause_range_s = parse_range(key, value);
    else if (key == "walk_range_s") cfg.walk_range_s = parse_range(key, value);
    else if (key == "alpha") cfg.alpha = parse_double(key, value);
    else if (key == "e_const_j") cfg.e_const_j = parse_double(key, value);
    else if (key == "battery_capacity_j") cfg.battery_capacity_j = parse_double(key, value);
    else if (key == "p0_dbm") cfg.p0_dbm = parse_double(key, value);
    else if (key == "p_max_dbm") cfg.p_max_dbm = parse_double(key, value);
    else if (key == "modulation_bits") cfg.modulation_bits = parse_int(key, value);
    else if (key == "code_rate") cfg.code_rate = parse_double(key, value);
    else if (key == "fc_ghz") cfg.fc_ghz = parse_double(key, value);
    else if (key == "h_enb_m") cfg.h_enb_m = parse_double(key, value);
    else if (key == "h_ue_m") cfg.h_ue_m = parse_double(key, value);
    else if (key == "n_walls") cfg.n_walls = parse_int(key, value);
    else if (key == "gamma1") cfg.gamma1 = parse_double(key, value);
    else if (key == "gamma2") cfg.gamma2 = parse_double(key, value);
    else if (key == "coop_pl_threshold_db") cfg.coop_pl_threshold_db = parse_double(key, value);
    else if (key == "coop_radius_m") cfg.coop_radius_m = parse_double(key, value);
    else if (key == "cooperation_enabled") cfg.cooperation_enabled = parse_bool(key, value);
    else if (key == "n_rbs") cfg.n_rbs = parse_int(key, value);
    else if (key == "shadow_sigma_cellular_db") cfg.shadow_sigma_cellular_db = parse_double(key, value);
    else if (key == "shadow_sigma_d2d_db") cfg.shadow_sigma_d2d_db = parse_double(key, value);
    else if (key == "d2d_p_min_dbm") cfg.d2d_p_min_dbm = parse_double(key, value);
    else if (key == "seed") cfg.seed = parse_u64(key, value);
    else if (key == "sim_end_s") cfg.sim_end_s = parse_double(key, value);
    else if (key == "trigger_uses_shadowing") cfg.trigger_uses_shadowing = parse_bool(key, value);
    else if (key == "shadow_per_burst") cfg.shadow_per_burst = parse_bool(key, value);
    else if (key == "assoc_max_duration_s") cfg.assoc_max_duration_s = parse_double(key, value);
    else if (key == "strategy") cfg.strategy = strategy_from_name(value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);

    ScenarioConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply_config_entry(cfg, key, value);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

namespace {

std::string num(double v) {
    if (std::isinf(v)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace

std::string config_to_text(const ScenarioConfig& c) {
    std::ostringstream os;
    os << "cell_radius_m = " << num(c.cell_radius_m) << '\n'
       << "n_ues = " << c.n_ues << '\n'
       << "mean_interarrival_s = " << num(c.mean_interarrival_s) << '\n'
       << "mean_burst_bytes = " << num(c.mean_burst_bytes) << '\n'
       << "speed_range_mps = " << num(c.speed_range_mps.lo) << ' ' << num(c.speed_range_mps.hi) << '\n'
       << "pause_range_s = " << num(c.pause_range_s.lo) << ' ' << num(c.pause_range_s.hi) << '\n'
       << "walk_range_s = " << num(c.walk_range_s.lo) << ' ' << num(c.walk_range_s.hi) << '\n'
       << "alpha = " << num(c.alpha) << '\n'
       << "e_const_j = " << num(c.e_const_j) << '\n'
       << "battery_capacity_j = " << num(c.battery_capacity_j) << '\n'
       << "p0_dbm = " << num(c.p0_dbm) << '\n'
       << "p_max_dbm = " << num(c.p_max_dbm) << '\n'
       << "modulation_bits = " << c.modulation_bits << '\n'
       << "code_rate = " << num(c.code_rate) << '\n'
       << "fc_ghz = " << num(c.fc_ghz) << '\n'
       << "h_enb_m = " << num(c.h_enb_m) << '\n'
       << "h_ue_m = " << num(c.h_ue_m) << '\n'
       << "n_walls = " << c.n_walls << '\n'
       << "gamma1 = " << num(c.gamma1) << '\n'
       << "gamma2 = " << num(c.gamma2) << '\n'
       << "coop_pl_threshold_db = " << num(c.coop_pl_threshold_db) << '\n'
       << "coop_radius_m = " << num(c.coop_radius_m) << '\n'
       << "cooperation_enabled = " << (c.cooperation_enabled ? "true" : "false") << '\n'
       << "n_rbs = " << c.n_rbs << '\n'
       << "shadow_sigma_cellular_db = " << num(c.shadow_sigma_cellular_db) << '\n'
       << "shadow_sigma_d2d_db = " << num(c.shadow_sigma_d2d_db) << '\n'
       << "d2d_p_min_dbm = " << num(c.d2d_p_min_dbm) << '\n'
       << "seed = " << c.seed << '\n'
       << "sim_end_s = " << num(c.sim_end_s) << '\n'
       << "trigger_uses_shadowing = " << (c.trigger_uses_shadowing ? "true" : "false") << '\n'
       << "shadow_per_burst = " << (c.shadow_per_burst ? "true" : "false") << '\n'
       << "assoc_max_duration_s = " << num(c.assoc_max_duration_s) << '\n'
       << "strategy = " << strategy_name(c.strategy) << '\n';
    return os.str();
}

} // namespace bds
