#include "doctest.h"

#include "evsim/errors.hpp"
#include "evsim/io.hpp"
#include "evsim/scenario.hpp"

#include "helpers.hpp"

using namespace evsim;

namespace {

ScenarioConfig small_config() {
    ScenarioConfig c;
    c.seed = 7;
    c.grid_width = 4;
    c.grid_height = 4;
    c.household_count = 100;
    c.vehicle_ownership_share = 1.0;
    c.ev_penetration = 0.05;
    c.home_charger_share = 0.60;
    return c;
}

}  // namespace

TEST_CASE("grid network construction") {
    ScenarioConfig c;
    c.grid_width = 2;
    c.grid_height = 2;
    c.spacing_km = 1.0;
    const NetworkGraph net = generate_network(c);
    CHECK(net.num_nodes() == 4);
    CHECK(net.num_links() == 8);
    for (const Link& l : net.links()) CHECK(l.length_km == doctest::Approx(1.0));
    net.validate();
}

TEST_CASE("invalid grid dimensions are rejected") {
    ScenarioConfig c;
    c.grid_width = 1;
    CHECK_THROWS_AS(generate_network(c), ConfigError);
}

TEST_CASE("network generation is deterministic") {
    const ScenarioBundle a = generate_scenario(small_config());
    const ScenarioBundle b = generate_scenario(small_config());
    CHECK(scenario_to_string(a) == scenario_to_string(b));
}

TEST_CASE("10x10 grid is strongly connected (reachability oracle)") {
    ScenarioConfig c;
    c.grid_width = 10;
    c.grid_height = 10;
    const NetworkGraph net = generate_network(c);
    CHECK(testutil::bfs_reachable(net, 0, false) == 100);
    CHECK(testutil::bfs_reachable(net, 0, true) == 100);
}

TEST_CASE("population counts follow the rounding rule") {
    const ScenarioConfig c = small_config();
    const NetworkGraph net = generate_network(c);
    std::vector<Household> households;
    std::vector<ActivityPlan> plans;
    std::vector<Vehicle> vehicles;
    generate_population(c, net, households, plans, vehicles);

    CHECK(households.size() == 100);
    int evs = 0, chargers = 0;
    for (const Household& h : households) {
        evs += h.owns_ev ? 1 : 0;
        chargers += h.has_home_charger ? 1 : 0;
        if (h.has_home_charger) CHECK(h.owns_ev);
    }
    CHECK(evs == 5);       // round(100 * 0.05)
    CHECK(chargers == 3);  // round(5 * 0.60)
}

TEST_CASE("zero home-charger share flags nobody") {
    ScenarioConfig c = small_config();
    c.home_charger_share = 0.0;
    const NetworkGraph net = generate_network(c);
    std::vector<Household> households;
    std::vector<ActivityPlan> plans;
    std::vector<Vehicle> vehicles;
    generate_population(c, net, households, plans, vehicles);
    for (const Household& h : households) CHECK_FALSE(h.has_home_charger);
}

TEST_CASE("round_count rounds to nearest with ties up") {
    CHECK(round_count(2.4) == 2);
    CHECK(round_count(2.5) == 3);
    CHECK(round_count(2.6) == 3);
    CHECK(round_count(0.0) == 0);
}

TEST_CASE("fleet specs follow the config") {
    ScenarioConfig c = small_config();
    SUBCASE("defaults give every EV the configured pack") {
        const ScenarioBundle b = generate_scenario(c);
        for (const Vehicle& v : b.vehicles) {
            CHECK(v.spec.capacity_kwh == doctest::Approx(64.0));
            CHECK(v.spec.consumption_kwh_per_km == doctest::Approx(0.16));
        }
    }
    SUBCASE("initial SoC 1.0 starts everyone full") {
        c.initial_soc_min = 1.0;
        c.initial_soc_max = 1.0;
        const ScenarioBundle b = generate_scenario(c);
        for (const Vehicle& v : b.vehicles) CHECK(v.spec.initial_soc == doctest::Approx(1.0));
    }
    SUBCASE("penetration 1.0 electrifies the whole fleet") {
        c.ev_penetration = 1.0;
        const ScenarioBundle b = generate_scenario(c);
        CHECK(!b.vehicles.empty());
        for (const Vehicle& v : b.vehicles) CHECK(v.is_ev);
    }
}

TEST_CASE("activity plans satisfy their invariants") {
    const ScenarioBundle b = generate_scenario(reference_config());
    REQUIRE(!b.plans.empty());
    for (const ActivityPlan& p : b.plans) {
        REQUIRE(p.activities.size() >= 2);
        const Activity& first = p.activities.front();
        const Activity& last = p.activities.back();
        CHECK(first.kind == ActivityKind::Home);
        CHECK(last.kind == ActivityKind::Home);
        CHECK(first.node == last.node);
        double prev = -1.0;
        for (const Activity& a : p.activities) {
            CHECK(a.start_s >= prev);
            CHECK(a.start_s >= 0.0);
            CHECK(a.start_s + a.duration_s <= 86400.0 + 1e-6);
            CHECK(a.node >= 0);
            CHECK(a.node < b.network.num_nodes());
            prev = a.start_s;
        }
    }
}

TEST_CASE("TAZs partition the grid") {
    const ScenarioBundle b = generate_scenario(reference_config());
    std::vector<int> owner(static_cast<std::size_t>(b.network.num_nodes()), -1);
    for (const Taz& t : b.tazs) {
        CHECK(!t.nodes.empty());
        bool centroid_is_member = false;
        for (int n : t.nodes) {
            CHECK(owner[static_cast<std::size_t>(n)] == -1);
            owner[static_cast<std::size_t>(n)] = t.id;
            if (n == t.centroid_node) centroid_is_member = true;
        }
        CHECK(centroid_is_member);
    }
    for (int o : owner) CHECK(o >= 0);
}

TEST_CASE("every node is reachable, so plans are routable") {
    const ScenarioBundle b = generate_scenario(reference_config());
    const auto dist0 = testutil::dijkstra_oracle(b.network, 0);
    for (double d : dist0) CHECK(d < 1e9);
}
