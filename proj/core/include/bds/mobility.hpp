#pragma once

#include <cstddef>
#include <vector>

#include "bds/config.hpp"
#include "bds/geometry.hpp"
#include "bds/rng.hpp"

namespace bds {

enum class SegmentKind { Walk, Pause };

// One leg of the Random Duration mobility model: either a straight walk
// (with specular reflection at the cell boundary) or a stationary pause.
struct Segment {
    Vec2 start_pos;
    double start_time = 0.0;
    SegmentKind kind = SegmentKind::Pause;
    double direction_rad = 0.0; // Walk only
    double speed_mps = 0.0;     // Walk only
    double duration_s = 0.0;

    double end_time() const { return start_time + duration_s; }
};

// First segment of a UE: Walk or Pause chosen by one fair coin flip, so the
// population does not start phase-synchronized.
Segment first_segment(Vec2 pos, double t, RandomStream& rng, const ScenarioConfig& cfg);

// Successor segment, alternating Walk and Pause. Walk draws direction
// ~ U[0, 2pi), speed and duration uniform in their configured ranges; Pause
// draws its duration uniform in the pause range.
Segment next_segment(const Segment& prev, double cell_radius_m, RandomStream& rng,
                     const ScenarioConfig& cfg);

// Position at time t within [start_time, end_time]. Walks integrate
// straight-line motion with specular reflection about the boundary tangent,
// applied repeatedly for long segments; a segment starting on the boundary
// while heading outward reflects immediately. Throws std::invalid_argument
// for t outside the segment.
Vec2 position_at(const Segment& seg, double t, double cell_radius_m);

// Kolmogorov-Smirnov distance between the empirical radial CDF of |p| samples
// and the uniform-disk CDF (r/R)^2.
double radial_ks_statistic(std::vector<double> radii, double cell_radius_m);

// Simulates one UE under the Random Duration model and records |p| every
// sample_interval_s; feeds radial_ks_statistic for the uniformity check.
std::vector<double> sample_long_run_radii(const ScenarioConfig& cfg, std::size_t n_samples,
                                          double sample_interval_s, RandomStream& rng);

// Long-run uniformity self-check: KS distance of the sampled radial CDF
// against (r/R)^2.
double stationary_uniformity_check(const ScenarioConfig& cfg, std::size_t n_samples,
                                   double sample_interval_s, std::uint64_t seed);

} // namespace bds
