#include "bds/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bds/channel.hpp"
#include "bds/protocol.hpp"
#include "bds/traffic.hpp"

namespace bds {

std::string teardown_reason_name(TeardownReason r) {
    switch (r) {
    case TeardownReason::None: return "live";
    case TeardownReason::HelpeeDepleted: return "helpee_depleted";
    case TeardownReason::HelperDepleted: return "helper_depleted";
    case TeardownReason::HelperBattery: return "helper_battery";
    case TeardownReason::Radius: return "radius";
    case TeardownReason::MaxDuration: return "max_duration";
    case TeardownReason::SimulationEnd: return "simulation_end";
    }
    return "unknown";
}

double TrafficModel::interarrival_s(std::uint32_t, RandomStream& rng,
                                    const ScenarioConfig& cfg) const {
    return next_interarrival_s(rng, cfg);
}

std::uint64_t TrafficModel::burst_size_bytes(std::uint32_t, RandomStream& rng,
                                             const ScenarioConfig& cfg) const {
    return next_burst_size_bytes(rng, cfg);
}

std::shared_ptr<const TrafficModel> default_traffic_model() {
    static const auto model = std::make_shared<const TrafficModel>();
    return model;
}

SimState::SimState(const ScenarioConfig& cfg, std::shared_ptr<const TrafficModel> traffic)
    : cfg_(cfg), traffic_(traffic ? std::move(traffic) : default_traffic_model()) {
    cfg_.validate();

    const std::uint32_t n = cfg_.n_ues;
    ues_.reserve(n);
    next_sample_idx_.assign(n, 0);
    battery_samples_.resize(n);
    debit_trails_.resize(n);

    for (std::uint32_t id = 0; id < n; ++id) {
        UeState ue;
        ue.id = id;
        // Draw order per UE is part of the determinism contract: radial u,
        // angle, battery, fixed cellular shadow, fixed D2D shadow.
        RandomStream init(substream_seed(cfg_.seed, id, StreamPurpose::Init));
        const double r = cfg_.cell_radius_m * std::sqrt(init.uniform01());
        const double angle = init.uniform(0.0, 2.0 * M_PI);
        const Vec2 pos{r * std::cos(angle), r * std::sin(angle)};
        ue.capacity_j = cfg_.battery_capacity_j;
        ue.battery_j = ue.initial_battery_j = init.uniform01_positive() * cfg_.battery_capacity_j;
        ue.fixed_shadow_cellular_db = init.normal(cfg_.shadow_sigma_cellular_db);
        ue.fixed_shadow_d2d_db = init.normal(cfg_.shadow_sigma_d2d_db);

        ue.traffic_rng = RandomStream(substream_seed(cfg_.seed, id, StreamPurpose::Traffic));
        ue.mobility_rng = RandomStream(substream_seed(cfg_.seed, id, StreamPurpose::Mobility));
        ue.shadow_rng = RandomStream(substream_seed(cfg_.seed, id, StreamPurpose::Shadow));

        ue.segment = first_segment(pos, 0.0, ue.mobility_rng, cfg_);
        ues_.push_back(std::move(ue));
        ++alive_count_;
    }

    for (UeState& ue : ues_) {
        schedule(traffic_->interarrival_s(ue.id, ue.traffic_rng, cfg_), EventKind::BurstArrival,
                 ue.id);
        schedule(ue.segment.end_time(), EventKind::SegmentEnd, ue.id);
    }
}

void SimState::set_battery_sample_times(std::vector<double> times_s) {
    if (ran_) throw std::logic_error("set_battery_sample_times: simulation already ran");
    std::sort(times_s.begin(), times_s.end());
    for (double t : times_s)
        if (t < 0 || t > cfg_.sim_end_s)
            throw std::invalid_argument("battery sample time outside [0, sim_end_s]");
    sample_times_ = std::move(times_s);
    for (auto& v : battery_samples_) v.assign(sample_times_.size(), 0.0);
}

void SimState::enable_energy_audit() {
    if (ran_) throw std::logic_error("enable_energy_audit: simulation already ran");
    audit_enabled_ = true;
}

void SimState::set_initial_battery(std::uint32_t ue_id, double joules) {
    if (ran_) throw std::logic_error("set_initial_battery: simulation already ran");
    UeState& ue = ues_.at(ue_id);
    if (joules < 0 || joules > ue.capacity_j)
        throw std::invalid_argument("set_initial_battery: joules outside [0, capacity]");
    ue.battery_j = ue.initial_battery_j = joules;
    if (joules == 0.0 && ue.alive()) {
        ue.depleted_at = 0.0;
        --alive_count_;
    }
}

void SimState::set_stationary_at(std::uint32_t ue_id, Vec2 pos) {
    if (ran_) throw std::logic_error("set_stationary_at: simulation already ran");
    if (norm(pos) > cfg_.cell_radius_m)
        throw std::invalid_argument("set_stationary_at: position outside the cell");
    UeState& ue = ues_.at(ue_id);
    ue.segment = Segment{pos, 0.0, SegmentKind::Pause, 0.0, 0.0, cfg_.sim_end_s + 1.0};
}

void SimState::schedule(double time, EventKind kind, std::uint32_t ue_id) {
    if (time < clock_)
        throw std::logic_error("schedule: event time " + std::to_string(time) +
                               " precedes clock " + std::to_string(clock_));
    queue_.push(time, kind, ue_id);
}

const std::vector<double>& SimState::debit_trail(std::uint32_t ue_id) const {
    if (!audit_enabled_) throw std::logic_error("debit_trail: energy audit not enabled");
    return debit_trails_.at(ue_id);
}

std::vector<UsageRecord> SimState::run() {
    if (ran_) throw std::logic_error("run: simulation already ran");
    ran_ = true;

    schedule(cfg_.sim_end_s, EventKind::SimulationEnd, 0);
    while (!queue_.empty() && alive_count_ > 0) {
        const Event ev = queue_.pop();
        if (ev.time < clock_)
            throw std::logic_error("event queue violated clock monotonicity");
        clock_ = ev.time;
        if (ev.kind == EventKind::SimulationEnd) break;
        if (ev.kind == EventKind::SegmentEnd) {
            if (ues_[ev.ue_id].alive() && ev.time == ues_[ev.ue_id].segment.end_time())
                process_segment_end(ev.ue_id);
        } else {
            if (ues_[ev.ue_id].alive()) process_burst(ev.ue_id);
        }
    }
    return finalize();
}

void SimState::process_segment_end(std::uint32_t ue_id) {
    UeState& ue = ues_[ue_id];
    ue.segment = next_segment(ue.segment, cfg_.cell_radius_m, ue.mobility_rng, cfg_);
    schedule(ue.segment.end_time(), EventKind::SegmentEnd, ue_id);
}

double SimState::shadow_db(UeState& owner, bool d2d, bool helper_side) {
    if (cfg_.shadow_per_burst) {
        // All shadowing for a burst is drawn from the burst owner's stream,
        // so a helper's own stream is untouched by the bursts it relays.
        return shadow_sample(owner.shadow_rng, d2d ? LinkType::D2D : LinkType::Cellular, cfg_);
    }
    if (d2d) return owner.fixed_shadow_d2d_db;
    return helper_side ? ues_[*owner.partner].fixed_shadow_cellular_db
                       : owner.fixed_shadow_cellular_db;
}

void SimState::process_burst(std::uint32_t ue_id) {
    UeState& ue = ues_[ue_id];
    const double now = clock_;
    const Vec2 pos = position_at(ue.segment, now, cfg_.cell_radius_m);

    const std::uint64_t bytes = traffic_->burst_size_bytes(ue.id, ue.traffic_rng, cfg_);
    // Drawn for every burst regardless of routing, to keep the shadow-stream
    // consumption independent of association state.
    const double cell_shadow = shadow_db(ue, false, false);
    const double pl_det = cellular_pl_det_db(pos, cfg_);

    if (ue.role == Role::Helpee) {
        const UeState& helper = ues_[*ue.partner];
        const Vec2 helper_pos = position_at(helper.segment, now, cfg_.cell_radius_m);
        const TeardownReason verdict =
            maintain_association(ue, helper, pos, helper_pos, now,
                                 assoc_log_[*ue.assoc_idx].established_at, cfg_);
        if (verdict != TeardownReason::None) teardown_association(ue.id, verdict);
    }

    if (cfg_.cooperation_enabled && ue.role == Role::Normal) {
        const double trigger_pl = pl_det + (cfg_.trigger_uses_shadowing ? cell_shadow : 0.0);
        evaluate_help_trigger(ue_id, pos, trigger_pl);
    }

    if (ue.role == Role::Helpee) {
        UeState& helper = ues_[*ue.partner];
        const Vec2 helper_pos = position_at(helper.segment, now, cfg_.cell_radius_m);
        ShadowSamples shadows;
        shadows.d2d_db = shadow_db(ue, true, false);
        shadows.helper_cellular_db = shadow_db(ue, false, true);
        const BurstDebits debits = route_burst(bytes, pos, helper_pos, shadows, cfg_);

        debit_energy(ue, debits.tx_energy_j, debits.duration_s);
        debit_energy(helper, *debits.helper_energy_j, debits.duration_s);
        ue.bytes_sent_d2d += bytes;
        helper.bytes_relayed_for_others += bytes;
        assoc_log_[*ue.assoc_idx].bytes_relayed += bytes;

        if (!ue.alive())
            teardown_association(ue.id, TeardownReason::HelpeeDepleted);
        else if (!helper.alive())
            teardown_association(ue.id, TeardownReason::HelperDepleted);
    } else {
        ShadowSamples shadows;
        shadows.tx_cellular_db = cell_shadow;
        const BurstDebits debits = route_burst(bytes, pos, std::nullopt, shadows, cfg_);
        debit_energy(ue, debits.tx_energy_j, debits.duration_s);
        ue.bytes_sent_direct += bytes;
        // A helper that depletes on its own burst releases its helpee.
        if (!ue.alive() && ue.partner.has_value())
            teardown_association(*ue.partner, TeardownReason::HelperDepleted);
    }

    if (ue.alive())
        schedule(now + traffic_->interarrival_s(ue.id, ue.traffic_rng, cfg_),
                 EventKind::BurstArrival, ue.id);
}

void SimState::evaluate_help_trigger(std::uint32_t ue_id, Vec2 pos, double pl_trigger_db) {
    UeState& ue = ues_[ue_id];
    if (!needs_help(ue, pl_trigger_db, cfg_)) return;
    const auto candidates = eligible_helpers(ues_, ue.id, pos, clock_, cfg_);
    const auto helper = select_helper(candidates, pos, cfg_.strategy);
    if (helper.has_value()) establish_association(ue.id, *helper, pos);
}

void SimState::establish_association(std::uint32_t helpee_id, std::uint32_t helper_id,
                                     Vec2 helpee_pos) {
    UeState& helpee = ues_.at(helpee_id);
    UeState& helper = ues_.at(helper_id);
    const Vec2 helper_pos = position_at(helper.segment, clock_, cfg_.cell_radius_m);

    const bool guards_ok =
        helpee_id != helper_id && helpee.alive() && helper.alive() &&
        !helpee.partner.has_value() && !helper.partner.has_value() &&
        helpee.battery_fraction() < cfg_.gamma1 && helper.battery_fraction() > cfg_.gamma2 &&
        distance(helpee_pos, helper_pos) <= cfg_.coop_radius_m;
    if (!guards_ok)
        throw std::logic_error("establish_association: guard violated for pair " +
                               std::to_string(helpee_id) + "/" + std::to_string(helper_id));

    AssociationRecord rec;
    rec.helpee_id = helpee_id;
    rec.helper_id = helper_id;
    rec.established_at = clock_;
    assoc_log_.push_back(rec);

    const std::size_t idx = assoc_log_.size() - 1;
    helpee.role = Role::Helpee;
    helpee.partner = helper_id;
    helpee.assoc_idx = idx;
    helper.role = Role::Helper;
    helper.partner = helpee_id;
    helper.assoc_idx = idx;
}

void SimState::teardown_association(std::uint32_t helpee_id, TeardownReason reason) {
    UeState& helpee = ues_.at(helpee_id);
    if (!helpee.partner.has_value() || helpee.role != Role::Helpee)
        throw std::logic_error("teardown_association: UE " + std::to_string(helpee_id) +
                               " is not a helpee");
    UeState& helper = ues_.at(*helpee.partner);

    AssociationRecord& rec = assoc_log_.at(*helpee.assoc_idx);
    rec.torn_down_at = clock_;
    rec.reason = reason;

    helpee.role = Role::Normal;
    helpee.partner.reset();
    helpee.assoc_idx.reset();
    helper.role = Role::Normal;
    helper.partner.reset();
    helper.assoc_idx.reset();
}

void SimState::record_samples_up_to(UeState& ue, double t) {
    std::size_t& idx = next_sample_idx_[ue.id];
    while (idx < sample_times_.size() && sample_times_[idx] <= t) {
        battery_samples_[ue.id][idx] = ue.battery_j;
        ++idx;
    }
}

void SimState::debit_energy(UeState& ue, double energy_j, double duration_s) {
    if (!ue.alive())
        throw std::logic_error("debit_energy: UE " + std::to_string(ue.id) + " already depleted");
    if (!(energy_j >= 0.0) || !std::isfinite(energy_j))
        throw std::logic_error("debit_energy: bad energy amount");

    record_samples_up_to(ue, clock_);

    double spend = energy_j;
    bool depletes = false;
    if (energy_j >= ue.battery_j) {
        spend = ue.battery_j;
        depletes = true;
    }
    ue.battery_j -= spend;
    if (audit_enabled_) debit_trails_[ue.id].push_back(spend);

    if (depletes) {
        ue.battery_j = 0.0;
        // Depletion instant interpolated within the burst transmission.
        const double fraction = energy_j > 0.0 ? spend / energy_j : 1.0;
        ue.depleted_at = clock_ + fraction * duration_s;
        --alive_count_;
    }
}

std::vector<UsageRecord> SimState::finalize() {
    for (std::size_t i = 0; i < assoc_log_.size(); ++i) {
        if (!assoc_log_[i].torn_down_at.has_value()) {
            assoc_log_[i].torn_down_at = clock_;
            assoc_log_[i].reason = TeardownReason::SimulationEnd;
        }
    }

    std::vector<UsageRecord> records;
    records.reserve(ues_.size());
    for (UeState& ue : ues_) {
        ue.role = Role::Normal;
        ue.partner.reset();
        ue.assoc_idx.reset();
        // Battery is constant after the last debit; remaining sample slots
        // see the final level.
        record_samples_up_to(ue, std::numeric_limits<double>::infinity());

        UsageRecord rec;
        rec.ue_id = ue.id;
        rec.depleted_at_s = ue.depleted_at;
        rec.remaining_j = ue.battery_j;
        rec.initial_battery_j = ue.initial_battery_j;
        rec.bytes_sent_direct = ue.bytes_sent_direct;
        rec.bytes_sent_d2d = ue.bytes_sent_d2d;
        rec.bytes_relayed_for_others = ue.bytes_relayed_for_others;
        rec.battery_at_sample_j = battery_samples_[ue.id];
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace bds
