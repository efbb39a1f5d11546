#include "bds/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace bds {

double cellular_pl_det_db(Vec2 pos, const ScenarioConfig& cfg) {
    const double d = std::max(norm(pos), kMinCellularDistanceM);
    return pl_winner_c2(d, cfg.h_enb_m, cfg.fc_ghz);
}

bool needs_help(const UeState& ue, double pl_cellular_db, const ScenarioConfig& cfg) {
    if (!ue.alive() || ue.partner.has_value()) return false;
    return ue.battery_fraction() < cfg.gamma1 && pl_cellular_db >= cfg.coop_pl_threshold_db;
}

std::vector<HelperCandidate> eligible_helpers(std::span<const UeState> ues,
                                              std::uint32_t helpee_id, Vec2 helpee_pos,
                                              double t, const ScenarioConfig& cfg) {
    std::vector<HelperCandidate> out;
    for (const UeState& ue : ues) {
        if (ue.id == helpee_id || !ue.alive() || ue.partner.has_value()) continue;
        if (ue.battery_fraction() <= cfg.gamma2) continue;
        const Vec2 pos = position_at(ue.segment, t, cfg.cell_radius_m);
        if (distance(pos, helpee_pos) > cfg.coop_radius_m) continue;
        // Candidates that would themselves ask for help are excluded; their
        // trigger is judged on deterministic path loss only.
        if (ue.battery_fraction() < cfg.gamma1 &&
            cellular_pl_det_db(pos, cfg) >= cfg.coop_pl_threshold_db)
            continue;
        out.push_back(HelperCandidate{ue.id, ue.battery_fraction(), pos});
    }
    return out;
}

std::optional<std::uint32_t> select_helper(std::span<const HelperCandidate> candidates,
                                           Vec2 helpee_pos, Strategy strategy) {
    if (candidates.empty()) return std::nullopt;

    const HelperCandidate* best = nullptr;
    double best_key = 0.0;
    for (const HelperCandidate& c : candidates) {
        // Lower key wins; iterating in ascending id order with strict
        // improvement makes ties resolve to the lowest id.
        const double key = strategy == Strategy::Proximity ? distance(c.pos, helpee_pos)
                                                           : -c.battery_fraction;
        if (best == nullptr || key < best_key ||
            (key == best_key && c.id < best->id)) {
            best = &c;
            best_key = key;
        }
    }
    return best->id;
}

TeardownReason maintain_association(const UeState& helpee, const UeState& helper,
                                    Vec2 helpee_pos, Vec2 helper_pos, double now,
                                    double established_at, const ScenarioConfig& cfg) {
    if (!helpee.alive()) return TeardownReason::HelpeeDepleted;
    if (!helper.alive()) return TeardownReason::HelperDepleted;
    if (helper.battery_fraction() <= cfg.gamma2) return TeardownReason::HelperBattery;
    if (distance(helpee_pos, helper_pos) > cfg.coop_radius_m) return TeardownReason::Radius;
    if (now - established_at > cfg.assoc_max_duration_s) return TeardownReason::MaxDuration;
    return TeardownReason::None;
}

BurstDebits route_burst(std::uint64_t bytes, Vec2 tx_pos, std::optional<Vec2> helper_pos,
                        const ShadowSamples& shadows, const ScenarioConfig& cfg) {
    const PowerParams params = cfg.power_params();
    BurstDebits debits;
    debits.duration_s = burst_duration_s(bytes, params);

    if (!helper_pos.has_value()) {
        debits.tx_link = LinkSample{cellular_pl_det_db(tx_pos, cfg), shadows.tx_cellular_db,
                                    LinkType::Cellular};
        debits.tx_energy_j =
            burst_energy_j(debits.tx_link.total_db(), bytes, params, LinkType::Cellular);
        return debits;
    }

    const double pair_d = std::max(distance(tx_pos, *helper_pos), kMinD2dDistanceM);
    debits.tx_link = LinkSample{pl_winner_a1(pair_d, cfg.n_walls, cfg.fc_ghz), shadows.d2d_db,
                                LinkType::D2D};
    debits.tx_energy_j = burst_energy_j(debits.tx_link.total_db(), bytes, params, LinkType::D2D);

    debits.helper_link = LinkSample{cellular_pl_det_db(*helper_pos, cfg),
                                    shadows.helper_cellular_db, LinkType::Cellular};
    debits.helper_energy_j =
        burst_energy_j(debits.helper_link->total_db(), bytes, params, LinkType::Cellular);
    return debits;
}

} // namespace bds
