#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bds/config.hpp"
#include "bds/events.hpp"
#include "bds/geometry.hpp"
#include "bds/mobility.hpp"
#include "bds/rng.hpp"

namespace bds {

enum class Role { Normal, Helpee, Helper };

enum class TeardownReason {
    None,
    HelpeeDepleted,
    HelperDepleted,
    HelperBattery,
    Radius,
    MaxDuration,
    SimulationEnd,
};

std::string teardown_reason_name(TeardownReason r);

// One helpee/helper pairing. torn_down_at is empty while the association is
// live; entries double as the audit log emitted with run results.
struct AssociationRecord {
    std::uint32_t helpee_id = 0;
    std::uint32_t helper_id = 0;
    double established_at = 0.0;
    std::optional<double> torn_down_at;
    std::uint64_t bytes_relayed = 0;
    TeardownReason reason = TeardownReason::None;
};

struct UeState {
    std::uint32_t id = 0;
    Segment segment;
    double battery_j = 0.0;
    double capacity_j = 0.0;
    double initial_battery_j = 0.0;
    Role role = Role::Normal;
    std::optional<std::uint32_t> partner;          // counterpart of the live association
    std::optional<std::size_t> assoc_idx;          // index into the association log
    std::optional<double> depleted_at;
    RandomStream traffic_rng;
    RandomStream mobility_rng;
    RandomStream shadow_rng;
    double fixed_shadow_cellular_db = 0.0; // used when shadow_per_burst = false
    double fixed_shadow_d2d_db = 0.0;
    std::uint64_t bytes_sent_direct = 0;
    std::uint64_t bytes_sent_d2d = 0;
    std::uint64_t bytes_relayed_for_others = 0;

    bool alive() const { return !depleted_at.has_value(); }
    double battery_fraction() const { return battery_j / capacity_j; }
};

// Per-UE outcome of one replication.
struct UsageRecord {
    std::uint32_t ue_id = 0;
    std::optional<double> depleted_at_s;
    double remaining_j = 0.0;
    double initial_battery_j = 0.0;
    std::uint64_t bytes_sent_direct = 0;
    std::uint64_t bytes_sent_d2d = 0;
    std::uint64_t bytes_relayed_for_others = 0;
    // Battery level observed at each requested sample time (see
    // SimState::set_battery_sample_times), in the same order.
    std::vector<double> battery_at_sample_j;
};

// Workload source. The default draws from the traffic module; tests inject
// deterministic stubs through this interface.
class TrafficModel {
public:
    virtual ~TrafficModel() = default;
    virtual double interarrival_s(std::uint32_t ue_id, RandomStream& rng,
                                  const ScenarioConfig& cfg) const;
    virtual std::uint64_t burst_size_bytes(std::uint32_t ue_id, RandomStream& rng,
                                           const ScenarioConfig& cfg) const;
};

std::shared_ptr<const TrafficModel> default_traffic_model();

// One replication: event queue, per-UE RNG substreams, and the main loop.
// All state is owned by the replication; distinct-seed replications can run
// concurrently with no sharing.
class SimState {
public:
    explicit SimState(const ScenarioConfig& cfg,
                      std::shared_ptr<const TrafficModel> traffic = nullptr);

    // Battery levels are recorded whenever the clock passes one of these
    // instants (sorted, each <= sim_end_s). Must be called before run().
    void set_battery_sample_times(std::vector<double> times_s);

    // Records every energy debit per UE so tests can replay the exact
    // bookkeeping. Must be called before run().
    void enable_energy_audit();

    // Test hooks: override the sampled initial state before run().
    void set_initial_battery(std::uint32_t ue_id, double joules);
    void set_stationary_at(std::uint32_t ue_id, Vec2 pos);

    // Schedules an event; time must not precede the current clock.
    void schedule(double time, EventKind kind, std::uint32_t ue_id);

    // Processes events in (time, seq) order until the horizon is reached or
    // every UE has depleted. Callable once.
    std::vector<UsageRecord> run();

    double clock() const { return clock_; }
    const ScenarioConfig& config() const { return cfg_; }
    const std::vector<UeState>& ues() const { return ues_; }
    const std::vector<AssociationRecord>& association_log() const { return assoc_log_; }
    const std::vector<double>& battery_sample_times() const { return sample_times_; }
    const std::vector<double>& debit_trail(std::uint32_t ue_id) const;

private:
    void process_segment_end(std::uint32_t ue_id);
    void process_burst(std::uint32_t ue_id);
    void evaluate_help_trigger(std::uint32_t ue_id, Vec2 pos, double pl_trigger_db);
    void establish_association(std::uint32_t helpee_id, std::uint32_t helper_id, Vec2 helpee_pos);
    void teardown_association(std::uint32_t helpee_id, TeardownReason reason);
    // Debits energy spent over a burst of the given duration; marks the UE
    // depleted at the interpolated instant when the battery cannot cover it.
    void debit_energy(UeState& ue, double energy_j, double duration_s);
    void record_samples_up_to(UeState& ue, double t);
    double shadow_db(UeState& owner, bool d2d, bool helper_side);
    std::vector<UsageRecord> finalize();

    ScenarioConfig cfg_;
    std::shared_ptr<const TrafficModel> traffic_;
    double clock_ = 0.0;
    EventQueue queue_;
    std::vector<UeState> ues_;
    std::vector<AssociationRecord> assoc_log_;
    std::vector<double> sample_times_;
    std::vector<std::size_t> next_sample_idx_;
    std::vector<std::vector<double>> battery_samples_;
    std::vector<std::vector<double>> debit_trails_;
    bool audit_enabled_ = false;
    bool ran_ = false;
    std::uint32_t alive_count_ = 0;
};

} // namespace bds
