#include "bds/traffic.hpp"

#include <array>

namespace bds {

double next_interarrival_s(RandomStream& rng, const ScenarioConfig& cfg) {
    return rng.exponential(cfg.mean_interarrival_s);
}

std::uint64_t next_burst_size_bytes(RandomStream& rng, const ScenarioConfig& cfg) {
    return rng.geometric1(1.0 / cfg.mean_burst_bytes);
}

std::span<const TrafficScenario> reference_traffic_mixture() {
    static const std::array<TrafficScenario, 5> rows{{
        {"light background", 0.60, 10.0, 50.0},
        {"heavy background", 0.20, 0.5, 100.0},
        {"instant messaging", 0.10, 2.0, 100.0},
        {"gaming", 0.05, 0.1, 25.0},
        {"interactive content pull", 0.05, 0.01, 40.0},
    }};
    return rows;
}

double mixture_rate_bps(std::span<const TrafficScenario> rows) {
    double rate = 0.0;
    for (const auto& row : rows) rate += row.weight * row.size_bytes / row.interarrival_s;
    return rate;
}

AggregateRateReport aggregate_rate_check(const ScenarioConfig& cfg) {
    AggregateRateReport r;
    r.generator_rate_bps = cfg.mean_burst_bytes / cfg.mean_interarrival_s;
    r.mixture_rate_bps = mixture_rate_bps(reference_traffic_mixture());
    r.ratio = r.generator_rate_bps / r.mixture_rate_bps;
    return r;
}

} // namespace bds
