#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bds/config.hpp"
#include "bds/rng.hpp"

namespace bds {

enum class LinkType { Cellular, D2D };

// Path loss split into its deterministic and shadowing parts (dB). Fast
// fading is out of scope.
struct LinkSample {
    double pl_det_db = 0.0;
    double shadow_db = 0.0;
    LinkType link_type = LinkType::Cellular;

    double total_db() const { return pl_det_db + shadow_db; }
};

// WINNER II C2 urban macro, NLOS variant (selected because it reproduces the
// 122 dB reference figure at 300 m / 25 m / 2 GHz).
double pl_winner_c2(double d_m, double h_enb_m, double fc_ghz);

// WINNER II A1 indoor NLOS, through light walls; +5 dB per wall past the
// first.
double pl_winner_a1(double d_m, int n_walls, double fc_ghz);

// TR 30.03 outdoor pedestrian model; kept only for the link-budget table,
// not used by the simulation proper.
double pl_umts_pedestrian(double d_m, double fc_mhz);

// Zero-mean normal shadowing in dB; sigma chosen by link type.
double shadow_sample(RandomStream& rng, LinkType link, const ScenarioConfig& cfg);

// Open-loop LTE uplink power: min(P0 + alpha*PL + 10*log10(M), Pmax) in dBm.
// D2D transmissions are additionally floored at the configured minimum.
double uplink_tx_power_dbm(double pl_total_db, const PowerParams& p, LinkType link);

// Transmission time of a burst over n_rbs resource blocks, at
// 12 subcarriers x 14 symbols/ms x modulation_bits x code_rate per block.
double burst_duration_s(std::uint64_t bytes, const PowerParams& p);

// Radiated energy plus the constant per-transmission component (RRC tail and
// circuitry), in joules.
double burst_energy_j(double pl_total_db, std::uint64_t bytes, const PowerParams& p,
                      LinkType link);

// Inputs for the cellular-vs-D2D link budget comparison; defaults are the
// nominal values (300 m uplink, 10 m D2D pair, 2 GHz) plus the receiver
// gain/noise-figure asymmetry between eNodeB and UE.
struct LinkBudgetInputs {
    double cell_distance_m = 300.0;
    double d2d_distance_m = 10.0;
    double fc_ghz = 2.0;
    double h_enb_m = 25.0;
    int n_walls = 1;
    double enb_gain_dbi = 14.0;
    double ue_gain_dbi = 0.0;
    double enb_noise_figure_db = 5.0;
    double ue_noise_figure_db = 9.0;
};

struct LinkBudgetRow {
    std::string model;
    double pl_cellular_db = 0.0;
    double pl_d2d_db = 0.0;
    double pl_diff_db = 0.0;
    double tx_power_diff_db = 0.0;
};

// One row per channel model (UMTS, WINNER II). The Tx power difference is
// the PL difference corrected by the receiver gain and noise-figure deltas.
std::vector<LinkBudgetRow> link_budget_report(const LinkBudgetInputs& in);

} // namespace bds
