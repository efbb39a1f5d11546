#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bds/metrics.hpp"
#include "bds/report_io.hpp"
#include "test_support.hpp"

using namespace bds;

namespace {

UsageRecord rec(std::uint32_t id, std::optional<double> depleted, double remaining,
                std::vector<double> samples = {}) {
    UsageRecord r;
    r.ue_id = id;
    r.depleted_at_s = depleted;
    r.remaining_j = remaining;
    r.initial_battery_j = 300.0;
    r.battery_at_sample_j = std::move(samples);
    return r;
}

} // namespace

TEST_CASE("outage probability basics") {
    std::vector<UsageRecord> records;
    records.push_back(rec(0, 100.0, 0.0));
    records.push_back(rec(1, 5000.0, 0.0));
    records.push_back(rec(2, std::nullopt, 50.0));

    CHECK(outage_probability(records, 0.0) == 0.0);
    CHECK(outage_probability(records, 200.0) == doctest::Approx(1.0 / 3.0));
    CHECK(outage_probability(records, 6000.0) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(outage_probability({}, 10.0), std::invalid_argument);

    // Nondecreasing in the target; outage + survivors == 1 exactly.
    double prev = 0.0;
    for (double t : {0.0, 50.0, 100.0, 101.0, 4999.0, 5001.0, 1e9}) {
        const double o = outage_probability(records, t);
        CHECK(o >= prev);
        prev = o;
        std::size_t survivors = 0;
        for (const auto& r : records)
            if (!r.depleted_at_s.has_value() || *r.depleted_at_s >= t) ++survivors;
        CHECK(o + static_cast<double>(survivors) / records.size() == 1.0);
    }
}

TEST_CASE("valueless battery averages survivors at the target instant") {
    const std::vector<double> samples{3600.0};
    std::vector<UsageRecord> records;
    records.push_back(rec(0, 100.0, 0.0, {0.0}));        // outage before the target
    records.push_back(rec(1, std::nullopt, 90.0, {120.0}));
    records.push_back(rec(2, 7200.0, 0.0, {60.0}));      // depleted after the target

    const auto v = valueless_battery(records, samples, 3600.0, 300.0);
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx((120.0 + 60.0) / 2.0 / 300.0).epsilon(1e-12));

    // Zero survivors reports undefined, not 0.
    std::vector<UsageRecord> all_out;
    all_out.push_back(rec(0, 10.0, 0.0, {0.0}));
    CHECK_FALSE(valueless_battery(all_out, samples, 3600.0, 300.0).has_value());

    CHECK_THROWS_AS(valueless_battery(records, samples, 1234.0, 300.0), std::invalid_argument);
}

TEST_CASE("untouched batteries at target zero average the initial fraction") {
    ScenarioConfig cfg;
    cfg.n_ues = 40;
    cfg.sim_end_s = 600.0;
    cfg.seed = 5;
    const auto stub = std::make_shared<bds::test::StubTraffic>(1e9, 1); // nobody transmits
    SimState sim(cfg, stub);
    sim.set_battery_sample_times({0.0});
    const auto records = sim.run();

    double initial_fraction = 0.0;
    for (const auto& r : records) initial_fraction += r.initial_battery_j;
    initial_fraction /= records.size() * cfg.battery_capacity_j;

    const std::vector<double> samples{0.0};
    const auto v = valueless_battery(records, samples, 0.0, cfg.battery_capacity_j);
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx(initial_fraction).epsilon(1e-12));
}

TEST_CASE("usage time distribution") {
    SUBCASE("single record is a unit step") {
        std::vector<UsageRecord> one;
        one.push_back(rec(0, 100.0, 0.0));
        const auto d = usage_time_distribution(one, 50.0, 1000.0);
        REQUIRE(d.cdf_points.size() == 1);
        CHECK(d.cdf_points[0].first == 100.0);
        CHECK(d.cdf_points[0].second == 1.0);
        CHECK(d.censored == 0);
        CHECK(d.bin_counts[2] == 1); // [100, 150)
    }

    SUBCASE("censored survivors cap the cdf below one") {
        std::vector<UsageRecord> records;
        records.push_back(rec(0, 10.0, 0.0));
        records.push_back(rec(1, std::nullopt, 5.0));
        const auto d = usage_time_distribution(records, 100.0, 1000.0);
        CHECK(d.censored == 1);
        CHECK(d.cdf_points.back().first == 1000.0);
        CHECK(d.cdf_points.back().second == 0.5);
    }

    SUBCASE("cdf is monotone on random inputs") {
        std::mt19937_64 gen(41);
        std::vector<UsageRecord> records;
        for (int i = 0; i < 500; ++i) {
            const double t = std::uniform_real_distribution<>(0.0, 2000.0)(gen);
            records.push_back(rec(i, t, 0.0));
        }
        const auto d = usage_time_distribution(records, 100.0, 2000.0);
        for (std::size_t i = 1; i < d.cdf_points.size(); ++i) {
            CHECK(d.cdf_points[i].first >= d.cdf_points[i - 1].first);
            CHECK(d.cdf_points[i].second >= d.cdf_points[i - 1].second);
        }
        CHECK(d.cdf_points.back().second == 1.0);
    }

    SUBCASE("bad inputs abort") {
        std::vector<UsageRecord> one;
        one.push_back(rec(0, 100.0, 0.0));
        CHECK_THROWS_AS(usage_time_distribution(one, 0.0, 1000.0), std::invalid_argument);
        CHECK_THROWS_AS(usage_time_distribution({}, 10.0, 1000.0), std::invalid_argument);
    }
}

TEST_CASE("summary statistics are permutation invariant") {
    std::vector<double> values{0.31, 0.292, 0.305, 0.33, 0.299, 0.301, 0.288, 0.316};
    const MetricSummary base = summarize(values);

    std::mt19937_64 gen(17);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(values.begin(), values.end(), gen);
        const MetricSummary s = summarize(values);
        CHECK(s.mean == base.mean);       // bit-identical
        CHECK(s.half_width == base.half_width);
    }

    const std::vector<double> single{0.5};
    CHECK(summarize(single).half_width == 0.0);
}

TEST_CASE("paired arms with cooperation neutralized are byte-identical") {
    ExperimentSpec spec;
    spec.cfg.n_ues = 50;
    spec.cfg.sim_end_s = 4 * 3600.0;
    spec.cfg.seed = 9;
    spec.cfg.coop_pl_threshold_db = 1e9; // the help trigger can never fire
    spec.mode = CoopMode::Paired;
    spec.n_replications = 2;
    spec.targets_s = {3600.0, 7200.0};

    const auto result = run_experiment(spec);
    REQUIRE(result.coop.has_value());
    REQUIRE(result.noncoop.has_value());
    for (std::uint32_t rep = 0; rep < 2; ++rep) {
        const auto& a = result.coop->replications[rep].records;
        const auto& b = result.noncoop->replications[rep].records;
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(bds::test::records_identical(a[i], b[i]));
    }
    for (const auto& report : result.reports) {
        CHECK(report.outage_coop->mean == report.outage_noncoop->mean);
        CHECK(report.valueless_coop->mean == report.valueless_noncoop->mean);
    }
}

TEST_CASE("one replication, fixed seed: identical outputs across runs") {
    ExperimentSpec spec;
    spec.cfg.n_ues = 40;
    spec.cfg.sim_end_s = 3 * 3600.0;
    spec.cfg.seed = 77;
    spec.n_replications = 1;
    spec.targets_s = {3600.0};

    const auto r1 = run_experiment(spec);
    const auto r2 = run_experiment(spec);
    CHECK(records_csv(r1) == records_csv(r2));
    CHECK(associations_csv(r1) == associations_csv(r2));
    CHECK(summary_text(r1) == summary_text(r2));
}

TEST_CASE("serial and parallel execution produce identical outputs") {
    ExperimentSpec spec;
    spec.cfg.n_ues = 60;
    spec.cfg.sim_end_s = 4 * 3600.0;
    spec.cfg.seed = 33;
    spec.n_replications = 3;
    spec.targets_s = {7200.0};

    spec.jobs = 1;
    const auto serial = run_experiment(spec);
    spec.jobs = 4;
    const auto parallel = run_experiment(spec);
    CHECK(records_csv(serial) == records_csv(parallel));
    CHECK(associations_csv(serial) == associations_csv(parallel));
    CHECK(summary_text(serial) == summary_text(parallel));
}

TEST_CASE("cooperation never raises outage and steepens the usage-time cdf") {
    ExperimentSpec spec;
    spec.cfg.n_ues = 300;
    spec.cfg.seed = 3;
    spec.cfg.e_const_j = 0.045;
    spec.mode = CoopMode::Paired;
    spec.n_replications = 2;
    spec.targets_s = {10 * 3600.0};
    spec.jobs = 4;

    const auto result = run_experiment(spec);
    const auto& report = result.reports[0];
    CHECK(report.outage_coop->mean < report.outage_noncoop->mean);

    // Interquartile range of depletion times shrinks under cooperation.
    auto iqr = [](const ArmResult& arm) {
        std::vector<double> times;
        for (const auto& r : arm.pooled_records)
            if (r.depleted_at_s.has_value()) times.push_back(*r.depleted_at_s);
        std::sort(times.begin(), times.end());
        return times[times.size() * 3 / 4] - times[times.size() / 4];
    };
    CHECK(iqr(*result.coop) < iqr(*result.noncoop));
}
