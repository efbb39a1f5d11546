#include "bds/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bds {

namespace {

Segment sample_walk(Vec2 pos, double t, RandomStream& rng, const ScenarioConfig& cfg) {
    Segment s;
    s.start_pos = pos;
    s.start_time = t;
    s.kind = SegmentKind::Walk;
    s.direction_rad = rng.uniform(0.0, 2.0 * M_PI);
    s.speed_mps = rng.uniform(cfg.speed_range_mps.lo, cfg.speed_range_mps.hi);
    s.duration_s = rng.uniform(cfg.walk_range_s.lo, cfg.walk_range_s.hi);
    return s;
}

Segment sample_pause(Vec2 pos, double t, RandomStream& rng, const ScenarioConfig& cfg) {
    Segment s;
    s.start_pos = pos;
    s.start_time = t;
    s.kind = SegmentKind::Pause;
    s.duration_s = rng.uniform(cfg.pause_range_s.lo, cfg.pause_range_s.hi);
    return s;
}

} // namespace

Segment first_segment(Vec2 pos, double t, RandomStream& rng, const ScenarioConfig& cfg) {
    const bool walk_first = rng.uniform01() < 0.5;
    return walk_first ? sample_walk(pos, t, rng, cfg) : sample_pause(pos, t, rng, cfg);
}

Segment next_segment(const Segment& prev, double cell_radius_m, RandomStream& rng,
                     const ScenarioConfig& cfg) {
    const Vec2 end_pos = position_at(prev, prev.end_time(), cell_radius_m);
    const double end_time = prev.end_time();
    return prev.kind == SegmentKind::Walk ? sample_pause(end_pos, end_time, rng, cfg)
                                          : sample_walk(end_pos, end_time, rng, cfg);
}

Vec2 position_at(const Segment& seg, double t, double cell_radius_m) {
    if (t < seg.start_time || t > seg.end_time() + 1e-9)
        throw std::invalid_argument("position_at: t outside segment");
    if (seg.kind == SegmentKind::Pause) return seg.start_pos;

    const double r2 = cell_radius_m * cell_radius_m;
    Vec2 p = seg.start_pos;
    Vec2 u{std::cos(seg.direction_rad), std::sin(seg.direction_rad)};
    double remaining = seg.speed_mps * (t - seg.start_time);

    int bounces = 0;
    while (remaining > 0.0) {
        // Distance along the ray to the circle |p + s*u| = R.
        const double pu = dot(p, u);
        const double disc = pu * pu + r2 - dot(p, p);
        const double s = -pu + std::sqrt(std::max(disc, 0.0));
        if (s >= remaining) {
            p = p + remaining * u;
            break;
        }
        p = p + s * u;
        // Specular reflection about the tangent at the crossing point. A
        // start exactly on the boundary heading outward gives s == 0 and
        // reflects immediately.
        const double pn = norm(p);
        const Vec2 n{p.x / pn, p.y / pn};
        const double un = dot(u, n);
        u = u - (2.0 * un) * n;
        if (dot(u, n) >= 0.0) u = {-n.x, -n.y}; // exactly tangent: head back inward
        remaining -= s;
        if (++bounces > 1000000)
            throw std::logic_error("position_at: reflection did not terminate");
    }
    return p;
}

double radial_ks_statistic(std::vector<double> radii, double cell_radius_m) {
    if (radii.empty()) throw std::invalid_argument("radial_ks_statistic: no samples");
    std::sort(radii.begin(), radii.end());
    const double n = static_cast<double>(radii.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = std::min(radii[i] / cell_radius_m, 1.0);
        const double model = r * r;
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        ks = std::max({ks, std::abs(model - lo), std::abs(model - hi)});
    }
    return ks;
}

std::vector<double> sample_long_run_radii(const ScenarioConfig& cfg, std::size_t n_samples,
                                          double sample_interval_s, RandomStream& rng) {
    if (n_samples == 0) throw std::invalid_argument("sample_long_run_radii: n_samples == 0");
    if (sample_interval_s <= 0)
        throw std::invalid_argument("sample_long_run_radii: nonpositive interval");

    // Start from the stationary spatial law (uniform over the disk).
    const double r0 = cfg.cell_radius_m * std::sqrt(rng.uniform01());
    const double a0 = rng.uniform(0.0, 2.0 * M_PI);
    Vec2 pos{r0 * std::cos(a0), r0 * std::sin(a0)};

    Segment seg = first_segment(pos, 0.0, rng, cfg);
    std::vector<double> radii;
    radii.reserve(n_samples);
    double t = 0.0;
    while (radii.size() < n_samples) {
        t += sample_interval_s;
        while (seg.end_time() < t) seg = next_segment(seg, cfg.cell_radius_m, rng, cfg);
        radii.push_back(norm(position_at(seg, t, cfg.cell_radius_m)));
    }
    return radii;
}

double stationary_uniformity_check(const ScenarioConfig& cfg, std::size_t n_samples,
                                   double sample_interval_s, std::uint64_t seed) {
    RandomStream rng(mix64(seed));
    auto radii = sample_long_run_radii(cfg, n_samples, sample_interval_s, rng);
    return radial_ks_statistic(std::move(radii), cfg.cell_radius_m);
}

} // namespace bds
