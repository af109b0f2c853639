#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evsim/network.hpp"

namespace evsim {

enum class ActivityKind { Home, Work, Shop, Other };

std::string activity_kind_name(ActivityKind k);
ActivityKind parse_activity_kind(const std::string& name);

struct Activity {
    ActivityKind kind = ActivityKind::Home;
    int node = 0;
    double start_s = 0.0;     // planned start
    double duration_s = 0.0;  // planned duration
};

// One plan per vehicle; first and last activity are home at the same node,
// planned times are non-decreasing and stay within the day.
struct ActivityPlan {
    int vehicle_id = 0;
    std::vector<Activity> activities;
};

struct Household {
    int id = 0;
    int home_node = 0;
    bool owns_ev = false;
    bool has_home_charger = false;  // 7.2 kW; only meaningful when owns_ev
};

struct VehicleSpec {
    double capacity_kwh = 64.0;
    double consumption_kwh_per_km = 0.16;
    double initial_soc = 1.0;  // fraction of capacity
};

struct Vehicle {
    int id = 0;
    int household_id = 0;
    bool is_ev = false;
    VehicleSpec spec;
};

struct Taz {
    int id = 0;
    int centroid_node = 0;
    std::vector<int> nodes;
};

// Shape parameters of the activity-plan template library
// (home-work-home, home-work-shop-home, home-other-home).
struct PlanShape {
    double work_start_mean_s = 8.0 * 3600;
    double work_start_std_s = 1800.0;
    double work_duration_mean_s = 8.0 * 3600;
    double work_duration_std_s = 3600.0;
    double shop_duration_mean_s = 2700.0;
    double shop_duration_std_s = 900.0;
    double other_start_mean_s = 10.0 * 3600;
    double other_start_std_s = 5400.0;
    double other_duration_mean_s = 5400.0;
    double other_duration_std_s = 1800.0;
    double share_work_only = 0.5;   // home-work-home
    double share_work_shop = 0.3;   // home-work-shop-home
    // remainder: home-other-home
    double cbd_share = 0.6;   // probability a work/shop location is drawn from the core
    double cbd_extent = 0.4;  // side fraction of the central square
};

struct ScenarioConfig {
    std::uint64_t seed = 42;
    int grid_width = 10;
    int grid_height = 10;
    double spacing_km = 1.0;
    double link_speed_kmh = 40.0;
    int taz_block = 5;  // TAZ side length, in nodes
    int household_count = 2000;
    double vehicle_ownership_share = 0.8;
    double ev_penetration = 0.05;
    double home_charger_share = 0.60;
    double battery_kwh = 64.0;
    double consumption_kwh_per_km = 0.16;
    // Start-of-day SoC drawn uniformly from this range (single value when equal).
    double initial_soc_min = 1.0;
    double initial_soc_max = 1.0;
    PlanShape plan;

    void validate() const;  // throws ConfigError
};

struct ScenarioBundle {
    ScenarioConfig config;
    NetworkGraph network;
    std::vector<Taz> tazs;
    std::vector<Household> households;
    std::vector<Vehicle> vehicles;
    std::vector<ActivityPlan> plans;  // indexed by vehicle id

    const ActivityPlan& plan_for(int vehicle_id) const;
    const Household& household_of(const Vehicle& v) const;
};

// Rounding rule used for all fractional population counts: nearest, ties up.
int round_count(double x);

NetworkGraph generate_network(const ScenarioConfig& config);
std::vector<Taz> partition_tazs(const ScenarioConfig& config, const NetworkGraph& net);

// One vehicle per vehicle-owning household; the EV flag mirrors the
// household flag and initial SoC is drawn from the configured range.
std::vector<Vehicle> assign_fleet(const ScenarioConfig& config,
                                  const std::vector<Household>& households);

void generate_population(const ScenarioConfig& config, const NetworkGraph& net,
                         std::vector<Household>& households,
                         std::vector<ActivityPlan>& plans_by_vehicle,
                         std::vector<Vehicle>& vehicles);
ScenarioBundle generate_scenario(const ScenarioConfig& config);

// The bundled desk-scale reference scenario (10x10 grid, 2000 households,
// seed 42) used by the acceptance suite and the README walkthrough.
ScenarioConfig reference_config();

}  // namespace evsim
