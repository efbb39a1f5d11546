#include <doctest.h>

#include <cmath>
#include <vector>

#include "bds/protocol.hpp"
#include "test_support.hpp"

using namespace bds;

namespace {

UeState make_ue(std::uint32_t id, Vec2 pos, double battery_fraction, double capacity = 300.0) {
    UeState ue;
    ue.id = id;
    ue.segment = Segment{pos, 0.0, SegmentKind::Pause, 0.0, 0.0, 1e9};
    ue.capacity_j = capacity;
    ue.battery_j = ue.initial_battery_j = battery_fraction * capacity;
    return ue;
}

// Distance at which the C2 model hits the given deterministic path loss.
double distance_for_cell_pl(double pl_db, const ScenarioConfig& cfg) {
    const double lh = std::log10(cfg.h_enb_m);
    const double fixed = 34.46 + 5.83 * lh + 23.0 * std::log10(cfg.fc_ghz / 5.0);
    return std::pow(10.0, (pl_db - fixed) / (44.9 - 6.55 * lh));
}

} // namespace

TEST_CASE("help trigger thresholds") {
    ScenarioConfig cfg;
    UeState ue = make_ue(0, {300, 0}, 0.2);
    CHECK(needs_help(ue, 115.0, cfg));
    CHECK(needs_help(ue, 110.0, cfg)); // at the threshold
    CHECK_FALSE(needs_help(ue, 105.0, cfg));

    UeState rich = make_ue(1, {300, 0}, 0.9);
    CHECK_FALSE(needs_help(rich, 140.0, cfg));

    UeState assoc = make_ue(2, {300, 0}, 0.2);
    assoc.partner = 5;
    assoc.role = Role::Helpee;
    CHECK_FALSE(needs_help(assoc, 140.0, cfg));

    UeState dead = make_ue(3, {300, 0}, 0.2);
    dead.depleted_at = 1.0;
    CHECK_FALSE(needs_help(dead, 140.0, cfg));
}

TEST_CASE("helper eligibility filters") {
    ScenarioConfig cfg;
    const Vec2 helpee_pos{300, 0};

    SUBCASE("empty when nobody is within the radius") {
        std::vector<UeState> ues;
        ues.push_back(make_ue(0, helpee_pos, 0.2));
        ues.push_back(make_ue(1, {400, 0}, 0.9));
        CHECK(eligible_helpers(ues, 0, helpee_pos, 0.0, cfg).empty());
    }

    SUBCASE("candidate at 29 m with battery just above gamma2 is included") {
        std::vector<UeState> ues;
        ues.push_back(make_ue(0, helpee_pos, 0.2));
        ues.push_back(make_ue(1, {329, 0}, 0.31));
        const auto c = eligible_helpers(ues, 0, helpee_pos, 0.0, cfg);
        REQUIRE(c.size() == 1);
        CHECK(c[0].id == 1);
    }

    SUBCASE("battery at gamma2 exactly is excluded") {
        std::vector<UeState> ues;
        ues.push_back(make_ue(0, helpee_pos, 0.2));
        ues.push_back(make_ue(1, {329, 0}, 0.30));
        CHECK(eligible_helpers(ues, 0, helpee_pos, 0.0, cfg).empty());
    }

    SUBCASE("existing helpers, the dead and the helpee itself are excluded") {
        std::vector<UeState> ues;
        ues.push_back(make_ue(0, helpee_pos, 0.2));
        UeState busy = make_ue(1, {329, 0}, 0.9);
        busy.role = Role::Helper;
        busy.partner = 3;
        ues.push_back(busy);
        UeState dead = make_ue(2, {310, 0}, 0.9);
        dead.depleted_at = 5.0;
        ues.push_back(dead);
        CHECK(eligible_helpers(ues, 0, helpee_pos, 0.0, cfg).empty());
    }

    SUBCASE("help-seeking candidates are excluded on deterministic path loss") {
        ScenarioConfig wide = cfg;
        wide.gamma2 = 0.1; // open the battery gate so the seek filter decides
        std::vector<UeState> ues;
        ues.push_back(make_ue(0, helpee_pos, 0.05));
        // Far cell edge: PL(300) = 122 >= 110, battery below gamma1 -> seeker.
        ues.push_back(make_ue(1, {310, 0}, 0.2));
        const auto far = eligible_helpers(ues, 0, helpee_pos, 0.0, wide);
        CHECK(far.empty());

        // Same battery near the eNodeB: PL < 110, not a seeker.
        const Vec2 near_pos{60, 0};
        std::vector<UeState> near_ues;
        near_ues.push_back(make_ue(0, {50, 0}, 0.05));
        near_ues.push_back(make_ue(1, near_pos, 0.2));
        const auto near = eligible_helpers(near_ues, 0, {50, 0}, 0.0, wide);
        REQUIRE(near.size() == 1);
        CHECK(near[0].id == 1);
    }
}

TEST_CASE("helper selection strategies") {
    const Vec2 helpee{0, 0};
    std::vector<HelperCandidate> c;

    SUBCASE("empty list yields none") {
        CHECK_FALSE(select_helper(c, helpee, Strategy::Proximity).has_value());
    }

    SUBCASE("proximity picks the closest") {
        c.push_back({1, 0.5, {12, 0}});
        c.push_back({2, 0.4, {5, 0}});
        CHECK(*select_helper(c, helpee, Strategy::Proximity) == 2);
    }

    SUBCASE("single candidate wins under any strategy") {
        c.push_back({9, 0.5, {10, 0}});
        CHECK(*select_helper(c, helpee, Strategy::Proximity) == 9);
        CHECK(*select_helper(c, helpee, Strategy::MaxBattery) == 9);
    }

    SUBCASE("distance ties break to the lowest id") {
        c.push_back({7, 0.5, {10, 0}});
        c.push_back({3, 0.4, {0, 10}});
        CHECK(*select_helper(c, helpee, Strategy::Proximity) == 3);
    }

    SUBCASE("max-battery picks the fullest, ties to lowest id") {
        c.push_back({4, 0.8, {20, 0}});
        c.push_back({6, 0.9, {25, 0}});
        CHECK(*select_helper(c, helpee, Strategy::MaxBattery) == 6);
        c.push_back({2, 0.9, {28, 0}});
        CHECK(*select_helper(c, helpee, Strategy::MaxBattery) == 2);
    }
}

TEST_CASE("strategy argmax invariances") {
    RandomStream rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec2 helpee{rng.uniform(-50, 50), rng.uniform(-50, 50)};
        std::vector<HelperCandidate> base;
        const int n = 1 + static_cast<int>(rng.next_u64() % 6);
        for (int i = 0; i < n; ++i)
            base.push_back({static_cast<std::uint32_t>(i),
                            rng.uniform(0.31, 1.0),
                            {helpee.x + rng.uniform(-30, 30), helpee.y + rng.uniform(-30, 30)}});

        // Proximity ignores any strictly monotone rescaling of batteries.
        auto rescaled = base;
        for (auto& cand : rescaled)
            cand.battery_fraction = 0.05 + cand.battery_fraction * cand.battery_fraction;
        CHECK(*select_helper(base, helpee, Strategy::Proximity) ==
              *select_helper(rescaled, helpee, Strategy::Proximity));

        // MaxBattery ignores any rigid motion of all positions.
        const double theta = rng.uniform(0.0, 2.0 * M_PI);
        const Vec2 shift{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        auto moved = base;
        auto rotate = [&](Vec2 p) {
            return Vec2{p.x * std::cos(theta) - p.y * std::sin(theta) + shift.x,
                        p.x * std::sin(theta) + p.y * std::cos(theta) + shift.y};
        };
        for (auto& cand : moved) cand.pos = rotate(cand.pos);
        CHECK(*select_helper(base, helpee, Strategy::MaxBattery) ==
              *select_helper(moved, rotate(helpee), Strategy::MaxBattery));
    }
}

TEST_CASE("association maintenance guards") {
    ScenarioConfig cfg;
    UeState helpee = make_ue(0, {300, 0}, 0.1);
    UeState helper = make_ue(1, {310, 0}, 0.8);

    CHECK(maintain_association(helpee, helper, {300, 0}, {310, 0}, 100.0, 0.0, cfg) ==
          TeardownReason::None);

    helper.battery_j = 0.29 * helper.capacity_j;
    CHECK(maintain_association(helpee, helper, {300, 0}, {310, 0}, 100.0, 0.0, cfg) ==
          TeardownReason::HelperBattery);
    helper.battery_j = 0.30 * helper.capacity_j; // boundary counts as teardown
    CHECK(maintain_association(helpee, helper, {300, 0}, {310, 0}, 100.0, 0.0, cfg) ==
          TeardownReason::HelperBattery);

    helper.battery_j = 0.8 * helper.capacity_j;
    CHECK(maintain_association(helpee, helper, {300, 0}, {331, 0}, 100.0, 0.0, cfg) ==
          TeardownReason::Radius);
    CHECK(maintain_association(helpee, helper, {300, 0}, {330, 0}, 100.0, 0.0, cfg) ==
          TeardownReason::None);

    ScenarioConfig capped = cfg;
    capped.assoc_max_duration_s = 50.0;
    CHECK(maintain_association(helpee, helper, {300, 0}, {310, 0}, 100.0, 0.0, capped) ==
          TeardownReason::MaxDuration);

    helper.depleted_at = 90.0;
    CHECK(maintain_association(helpee, helper, {300, 0}, {310, 0}, 100.0, 0.0, cfg) ==
          TeardownReason::HelperDepleted);
}

TEST_CASE("burst routing energies") {
    ScenarioConfig cfg;
    cfg.shadow_sigma_cellular_db = 0.0;
    cfg.shadow_sigma_d2d_db = 0.0;
    const PowerParams p = cfg.power_params();
    const double dur = 62400.0 / 224000.0;

    SUBCASE("unassociated burst pays the cellular uplink") {
        const auto d = route_burst(7800, {300, 0}, std::nullopt, {}, cfg);
        CHECK_FALSE(d.relayed());
        const double expect = std::pow(10.0, (24.0 - 30.0) / 10.0) * dur + 0.015;
        CHECK(d.tx_energy_j == doctest::Approx(expect).epsilon(1e-9));
        CHECK(std::abs(d.tx_energy_j - 0.0850) < 5e-5);
        CHECK(d.tx_link.link_type == LinkType::Cellular);
    }

    SUBCASE("relayed burst splits between D2D hop and helper uplink") {
        // Helper placed where its own deterministic cellular PL is 110 dB.
        const double dh = distance_for_cell_pl(110.0, cfg);
        const Vec2 helper_pos{dh, 0};
        const Vec2 helpee_pos{dh - 10.0, 0};
        const auto d = route_burst(7800, helpee_pos, helper_pos, {}, cfg);
        REQUIRE(d.relayed());

        // Helpee: A1 at 10 m -> 72.6412 dB -> -10.887 dBm.
        const double pl_d2d = 36.8 + 43.8 + 20.0 * std::log10(0.4);
        const double p_d2d = -69.0 + 0.8 * pl_d2d;
        const double expect_helpee = std::pow(10.0, (p_d2d - 30.0) / 10.0) * dur + 0.015;
        CHECK(d.tx_energy_j == doctest::Approx(expect_helpee).epsilon(1e-9));
        CHECK(d.tx_energy_j == doctest::Approx(0.01502).epsilon(1e-3));

        // Helper: min(-69 + 0.8*110, 24) = 19 dBm.
        const double expect_helper = std::pow(10.0, (19.0 - 30.0) / 10.0) * dur + 0.015;
        CHECK(*d.helper_energy_j == doctest::Approx(expect_helper).epsilon(1e-9));
        CHECK(*d.helper_energy_j == doctest::Approx(0.0371).epsilon(2e-3));
        CHECK(d.duration_s == doctest::Approx(dur).epsilon(1e-12));
    }

    SUBCASE("helpee transmit power sits 3-4 orders of magnitude below the helper") {
        ScenarioConfig zero = cfg;
        zero.e_const_j = 0.0;
        const auto d = route_burst(7800, {295, 0}, Vec2{305, 0}, {}, zero);
        REQUIRE(d.relayed());
        const double ratio = *d.helper_energy_j / d.tx_energy_j;
        CHECK(ratio > 1e3);
        CHECK(ratio < 1e4);
    }

    SUBCASE("pair distances below the model floor are clamped") {
        const auto at_zero = route_burst(100, {200, 0}, Vec2{200, 0}, {}, cfg);
        const auto at_1m = route_burst(100, {200, 0}, Vec2{201, 0}, {}, cfg);
        CHECK(at_zero.tx_energy_j == doctest::Approx(at_1m.tx_energy_j).epsilon(1e-12));
    }

    SUBCASE("shadowing shifts the total path loss") {
        ShadowSamples sh;
        sh.tx_cellular_db = -40.0; // deep favorable shadow uncaps the link
        const auto d = route_burst(7800, {300, 0}, std::nullopt, sh, cfg);
        const double p_dbm = -69.0 + 0.8 * (121.99840 - 40.0);
        const double expect = std::pow(10.0, (p_dbm - 30.0) / 10.0) * dur + 0.015;
        CHECK(d.tx_energy_j == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("conservation of demand under cooperation") {
    ScenarioConfig cfg;
    cfg.n_ues = 100;
    cfg.sim_end_s = 4 * 3600.0;
    cfg.seed = 31;
    SimState sim(cfg);
    const auto records = sim.run();

    std::uint64_t d2d = 0, relayed = 0, generated = 0, to_enb = 0;
    for (const auto& r : records) {
        d2d += r.bytes_sent_d2d;
        relayed += r.bytes_relayed_for_others;
        generated += r.bytes_sent_direct + r.bytes_sent_d2d;
        to_enb += r.bytes_sent_direct + r.bytes_relayed_for_others;
    }
    CHECK(d2d > 0); // cooperation actually exercised
    CHECK(d2d == relayed);
    CHECK(generated == to_enb);
}

TEST_CASE("role exclusivity: association intervals never overlap per UE") {
    ScenarioConfig cfg;
    cfg.n_ues = 120;
    cfg.sim_end_s = 6 * 3600.0;
    cfg.seed = 77;
    SimState sim(cfg);
    sim.run();

    const auto& log = sim.association_log();
    CHECK(!log.empty());
    // Every entry is closed by the end of the run; check pairwise overlap of
    // the live intervals touching each UE, in either role.
    for (std::size_t i = 0; i < log.size(); ++i) {
        REQUIRE(log[i].torn_down_at.has_value());
        CHECK(log[i].helpee_id != log[i].helper_id);
        for (std::size_t j = i + 1; j < log.size(); ++j) {
            const bool shares_ue =
                log[i].helpee_id == log[j].helpee_id || log[i].helpee_id == log[j].helper_id ||
                log[i].helper_id == log[j].helpee_id || log[i].helper_id == log[j].helper_id;
            if (!shares_ue) continue;
            const bool disjoint = *log[i].torn_down_at <= log[j].established_at ||
                                  *log[j].torn_down_at <= log[i].established_at;
            CHECK(disjoint);
        }
    }
}
