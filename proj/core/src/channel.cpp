#include "bds/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bds {

double pl_winner_c2(double d_m, double h_enb_m, double fc_ghz) {
    if (d_m <= 0) throw std::invalid_argument("pl_winner_c2: nonpositive distance");
    const double lh = std::log10(h_enb_m);
    return (44.9 - 6.55 * lh) * std::log10(d_m) + 34.46 + 5.83 * lh +
           23.0 * std::log10(fc_ghz / 5.0);
}

double pl_winner_a1(double d_m, int n_walls, double fc_ghz) {
    if (d_m <= 0) throw std::invalid_argument("pl_winner_a1: nonpositive distance");
    if (n_walls < 1) throw std::invalid_argument("pl_winner_a1: n_walls must be >= 1");
    return 36.8 * std::log10(d_m) + 43.8 + 20.0 * std::log10(fc_ghz / 5.0) +
           5.0 * (n_walls - 1);
}

double pl_umts_pedestrian(double d_m, double fc_mhz) {
    if (d_m <= 0) throw std::invalid_argument("pl_umts_pedestrian: nonpositive distance");
    return 40.0 * std::log10(d_m / 1000.0) + 30.0 * std::log10(fc_mhz) + 49.0;
}

double shadow_sample(RandomStream& rng, LinkType link, const ScenarioConfig& cfg) {
    const double sigma =
        link == LinkType::Cellular ? cfg.shadow_sigma_cellular_db : cfg.shadow_sigma_d2d_db;
    return rng.normal(sigma);
}

double uplink_tx_power_dbm(double pl_total_db, const PowerParams& p, LinkType link) {
    if (!std::isfinite(pl_total_db))
        throw std::invalid_argument("uplink_tx_power_dbm: path loss must be finite");
    double power = p.p0_dbm + p.alpha * pl_total_db + 10.0 * std::log10(static_cast<double>(p.n_rbs));
    power = std::min(power, p.p_max_dbm);
    if (link == LinkType::D2D) power = std::max(power, p.d2d_p_min_dbm);
    return power;
}

double burst_duration_s(std::uint64_t bytes, const PowerParams& p) {
    if (bytes < 1) throw std::invalid_argument("burst_duration_s: bytes must be >= 1");
    // 12 subcarriers x 14 symbols per ms per resource block.
    const double rate_bps = 12.0 * 14.0 * 1000.0 * p.modulation_bits * p.code_rate * p.n_rbs;
    return 8.0 * static_cast<double>(bytes) / rate_bps;
}

double burst_energy_j(double pl_total_db, std::uint64_t bytes, const PowerParams& p,
                      LinkType link) {
    const double power_dbm = uplink_tx_power_dbm(pl_total_db, p, link);
    const double power_w = std::pow(10.0, (power_dbm - 30.0) / 10.0);
    return power_w * burst_duration_s(bytes, p) + p.e_const_j;
}

std::vector<LinkBudgetRow> link_budget_report(const LinkBudgetInputs& in) {
    // Positive correction when the eNodeB receiver is better than a UE's.
    const double gain_corr =
        (in.enb_gain_dbi - in.ue_gain_dbi) + (in.ue_noise_figure_db - in.enb_noise_figure_db);

    std::vector<LinkBudgetRow> rows;
    {
        LinkBudgetRow r;
        r.model = "UMTS";
        r.pl_cellular_db = pl_umts_pedestrian(in.cell_distance_m, in.fc_ghz * 1000.0);
        r.pl_d2d_db = pl_umts_pedestrian(in.d2d_distance_m, in.fc_ghz * 1000.0);
        r.pl_diff_db = r.pl_cellular_db - r.pl_d2d_db;
        r.tx_power_diff_db = r.pl_diff_db - gain_corr;
        rows.push_back(r);
    }
    {
        LinkBudgetRow r;
        r.model = "WINNER II";
        r.pl_cellular_db = pl_winner_c2(in.cell_distance_m, in.h_enb_m, in.fc_ghz);
        r.pl_d2d_db = pl_winner_a1(in.d2d_distance_m, in.n_walls, in.fc_ghz);
        r.pl_diff_db = r.pl_cellular_db - r.pl_d2d_db;
        r.tx_power_diff_db = r.pl_diff_db - gain_corr;
        rows.push_back(r);
    }
    return rows;
}

} // namespace bds
