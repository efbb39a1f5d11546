#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bds/channel.hpp"
#include "bds/config.hpp"
#include "bds/geometry.hpp"
#include "bds/kernel.hpp"

namespace bds {

// Candidate view handed to the selection strategy.
struct HelperCandidate {
    std::uint32_t id = 0;
    double battery_fraction = 0.0;
    Vec2 pos;
};

// Help trigger, evaluated at each burst arrival of an unassociated UE:
// battery fraction below gamma1 AND cellular path loss at or above the
// cooperation threshold.
bool needs_help(const UeState& ue, double pl_cellular_db, const ScenarioConfig& cfg);

// All alive, unassociated UEs within the cooperation radius whose battery
// fraction exceeds gamma2 and who are not themselves help-seeking (judged on
// deterministic path loss; no shadowing draw is spent on candidates).
std::vector<HelperCandidate> eligible_helpers(std::span<const UeState> ues,
                                              std::uint32_t helpee_id, Vec2 helpee_pos,
                                              double t, const ScenarioConfig& cfg);

// Proximity picks the closest candidate, MaxBattery the fullest; ties break
// toward the lowest UE id. Empty candidate list yields nullopt and the burst
// goes out uncooperatively.
std::optional<std::uint32_t> select_helper(std::span<const HelperCandidate> candidates,
                                           Vec2 helpee_pos, Strategy strategy);

// Association guard re-check at a helpee burst instant. Returns None to keep.
TeardownReason maintain_association(const UeState& helpee, const UeState& helper,
                                    Vec2 helpee_pos, Vec2 helper_pos, double now,
                                    double established_at, const ScenarioConfig& cfg);

// Shadowing realizations for one burst, resolved by the kernel (per-burst
// draws or per-UE fixed values, depending on configuration).
struct ShadowSamples {
    double tx_cellular_db = 0.0;     // transmitter -> eNodeB
    double d2d_db = 0.0;             // helpee -> helper
    double helper_cellular_db = 0.0; // helper -> eNodeB
};

// Energy cost of one burst. Unrelayed: the transmitter pays the cellular
// uplink. Relayed: the helpee pays the D2D hop and the helper pays the
// cellular uplink for the same byte count; both debits include the constant
// per-transmission component. Signaling is bookkept as instantaneous and
// free.
struct BurstDebits {
    double duration_s = 0.0;
    double tx_energy_j = 0.0;
    LinkSample tx_link;
    std::optional<double> helper_energy_j;
    std::optional<LinkSample> helper_link;

    bool relayed() const { return helper_energy_j.has_value(); }
};

BurstDebits route_burst(std::uint64_t bytes, Vec2 tx_pos, std::optional<Vec2> helper_pos,
                        const ShadowSamples& shadows, const ScenarioConfig& cfg);

// Distance floors below which the path-loss models are evaluated at their
// validity limit.
inline constexpr double kMinCellularDistanceM = 10.0;
inline constexpr double kMinD2dDistanceM = 1.0;

// Deterministic cellular path loss from a position (eNodeB at the origin),
// clamped to the model's minimum distance.
double cellular_pl_det_db(Vec2 pos, const ScenarioConfig& cfg);

} // namespace bds
