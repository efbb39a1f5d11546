#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bds/config.hpp"
#include "bds/rng.hpp"

namespace bds {

// Exponential burst inter-arrival (Poisson arrivals), mean from config.
double next_interarrival_s(RandomStream& rng, const ScenarioConfig& cfg);

// Geometric burst size on {1, 2, ...} bytes with p = 1/mean_burst_bytes.
std::uint64_t next_burst_size_bytes(RandomStream& rng, const ScenarioConfig& cfg);

// One row of the reference smartphone traffic mixture.
struct TrafficScenario {
    std::string name;
    double weight = 0.0; // fraction of uplink data attributed to this scenario
    double interarrival_s = 0.0;
    double size_bytes = 0.0;
};

// The reference mixture: 60% light background, 20% heavy background,
// 10% instant messaging, 5% gaming, 5% interactive content pull.
std::span<const TrafficScenario> reference_traffic_mixture();

// Weighted mean uplink rate of a mixture, bytes per second.
double mixture_rate_bps(std::span<const TrafficScenario> rows);

struct AggregateRateReport {
    double generator_rate_bps = 0.0; // mean_burst_bytes / mean_interarrival_s
    double mixture_rate_bps = 0.0;   // weighted sum over the reference rows
    double ratio = 0.0;              // generator / mixture
};

// Documents how the generator's (30 s, 7800 B) parameters reconstruct the
// reference mixture's aggregate rate.
AggregateRateReport aggregate_rate_check(const ScenarioConfig& cfg);

} // namespace bds
