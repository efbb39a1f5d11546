#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bds/traffic.hpp"

using namespace bds;

TEST_CASE("inter-arrival draws are exponential with mean 30 s") {
    ScenarioConfig cfg;
    RandomStream rng(101);
    const int n = 1000000;
    std::vector<double> draws;
    draws.reserve(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = next_interarrival_s(rng, cfg);
        CHECK(x > 0.0);
        draws.push_back(x);
        sum += x;
    }
    CHECK(sum / n == doctest::Approx(30.0).epsilon(0.005));

    // KS distance against 1 - exp(-t/30).
    std::sort(draws.begin(), draws.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double model = 1.0 - std::exp(-draws[i] / 30.0);
        ks = std::max({ks, std::abs(model - static_cast<double>(i) / n),
                       std::abs(model - static_cast<double>(i + 1) / n)});
    }
    CHECK(ks < 0.002);

    // Memorylessness: P(X > 60 | X > 30) equals P(X > 30).
    const auto above = [&](double t) {
        return static_cast<double>(draws.end() -
                                   std::upper_bound(draws.begin(), draws.end(), t));
    };
    const double cond = above(60.0) / above(30.0);
    const double uncond = above(30.0) / n;
    CHECK(std::abs(cond - uncond) < 0.005);
}

TEST_CASE("burst sizes are geometric with mean 7800 bytes") {
    ScenarioConfig cfg;
    RandomStream rng(202);
    const int n = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(next_burst_size_bytes(rng, cfg));
        CHECK(x >= 1.0);
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(7800.0).epsilon(0.01));
    const double var = sumsq / n - mean * mean;
    CHECK(var == doctest::Approx(7799.0 * 7800.0).epsilon(0.03));
}

TEST_CASE("degenerate geometric always yields one byte") {
    ScenarioConfig cfg;
    cfg.mean_burst_bytes = 1.0; // p = 1
    RandomStream rng(5);
    for (int i = 0; i < 100; ++i) CHECK(next_burst_size_bytes(rng, cfg) == 1);
}

TEST_CASE("aggregate rate reconstruction") {
    ScenarioConfig cfg;
    const AggregateRateReport r = aggregate_rate_check(cfg);
    CHECK(r.generator_rate_bps == doctest::Approx(260.0).epsilon(1e-12));
    // 0.6*5 + 0.2*200 + 0.1*50 + 0.05*250 + 0.05*4000 = 260.5
    CHECK(r.mixture_rate_bps == doctest::Approx(260.5).epsilon(1e-9));
    CHECK(std::abs(r.ratio - 1.0) < 0.02);

    const TrafficScenario light{"light background", 1.0, 10.0, 50.0};
    CHECK(mixture_rate_bps({&light, 1}) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("per-UE traffic depends only on the substream seed") {
    ScenarioConfig cfg;
    RandomStream a(substream_seed(9, 4, StreamPurpose::Traffic));
    RandomStream b(substream_seed(9, 4, StreamPurpose::Traffic));
    for (int i = 0; i < 50; ++i) {
        CHECK(next_interarrival_s(a, cfg) == next_interarrival_s(b, cfg));
        CHECK(next_burst_size_bytes(a, cfg) == next_burst_size_bytes(b, cfg));
    }
}
