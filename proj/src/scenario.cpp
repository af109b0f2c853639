#include "evsim/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "evsim/errors.hpp"
#include "evsim/rng.hpp"

namespace evsim {

namespace {

// Fixed sub-stream labels so each generation stage draws independently.
constexpr std::uint64_t kStreamHouseholds = 1;
constexpr std::uint64_t kStreamFleet = 2;
constexpr std::uint64_t kStreamPlans = 3;

constexpr double kDay = 86400.0;

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

}  // namespace

std::string activity_kind_name(ActivityKind k) {
    switch (k) {
        case ActivityKind::Home: return "home";
        case ActivityKind::Work: return "work";
        case ActivityKind::Shop: return "shop";
        case ActivityKind::Other: return "other";
    }
    throw InternalError("bad activity kind");
}

ActivityKind parse_activity_kind(const std::string& name) {
    if (name == "home") return ActivityKind::Home;
    if (name == "work") return ActivityKind::Work;
    if (name == "shop") return ActivityKind::Shop;
    if (name == "other") return ActivityKind::Other;
    throw InputError("unknown activity kind: " + name);
}

int round_count(double x) {
    // nearest, ties rounding up
    return static_cast<int>(std::floor(x + 0.5));
}

void ScenarioConfig::validate() const {
    if (grid_width < 2 || grid_height < 2)
        throw ConfigError("grid dimensions must be at least 2x2");
    if (spacing_km <= 0.0) throw ConfigError("spacing must be positive");
    if (link_speed_kmh <= 0.0) throw ConfigError("link speed must be positive");
    if (taz_block < 1) throw ConfigError("taz block must be at least 1");
    if (household_count < 1) throw ConfigError("household count must be positive");
    if (vehicle_ownership_share < 0.0 || vehicle_ownership_share > 1.0)
        throw ConfigError("vehicle ownership share must lie in [0,1]");
    if (ev_penetration < 0.0 || ev_penetration > 1.0)
        throw ConfigError("EV penetration must lie in [0,1]");
    if (home_charger_share < 0.0 || home_charger_share > 1.0)
        throw ConfigError("home charger share must lie in [0,1]");
    if (battery_kwh <= 0.0) throw ConfigError("battery capacity must be positive");
    if (consumption_kwh_per_km <= 0.0) throw ConfigError("consumption rate must be positive");
    if (initial_soc_min < 0.0 || initial_soc_max > 1.0 || initial_soc_min > initial_soc_max)
        throw ConfigError("initial SoC range must satisfy 0 <= min <= max <= 1");
    if (plan.share_work_only < 0.0 || plan.share_work_shop < 0.0 ||
        plan.share_work_only + plan.share_work_shop > 1.0)
        throw ConfigError("plan template shares must be non-negative and sum to at most 1");
    if (plan.cbd_share < 0.0 || plan.cbd_share > 1.0 || plan.cbd_extent <= 0.0 ||
        plan.cbd_extent > 1.0)
        throw ConfigError("cbd parameters out of range");
}

const ActivityPlan& ScenarioBundle::plan_for(int vehicle_id) const {
    if (vehicle_id < 0 || vehicle_id >= static_cast<int>(plans.size()))
        throw ConsistencyError("no plan for vehicle");
    return plans[static_cast<std::size_t>(vehicle_id)];
}

const Household& ScenarioBundle::household_of(const Vehicle& v) const {
    if (v.household_id < 0 || v.household_id >= static_cast<int>(households.size()))
        throw ConsistencyError("vehicle references unknown household");
    return households[static_cast<std::size_t>(v.household_id)];
}

NetworkGraph generate_network(const ScenarioConfig& config) {
    config.validate();
    return NetworkGraph::grid(config.grid_width, config.grid_height, config.spacing_km,
                              config.link_speed_kmh);
}

std::vector<Taz> partition_tazs(const ScenarioConfig& config, const NetworkGraph& net) {
    const int bw = (config.grid_width + config.taz_block - 1) / config.taz_block;
    const int bh = (config.grid_height + config.taz_block - 1) / config.taz_block;
    std::vector<Taz> tazs(static_cast<std::size_t>(bw * bh));
    for (int r = 0; r < config.grid_height; ++r) {
        for (int c = 0; c < config.grid_width; ++c) {
            const int tid = (r / config.taz_block) * bw + (c / config.taz_block);
            tazs[static_cast<std::size_t>(tid)].nodes.push_back(r * config.grid_width + c);
        }
    }
    for (int t = 0; t < static_cast<int>(tazs.size()); ++t) {
        Taz& taz = tazs[static_cast<std::size_t>(t)];
        taz.id = t;
        // centroid: member node nearest the mean coordinate
        double cx = 0.0, cy = 0.0;
        for (int n : taz.nodes) {
            cx += net.node(n).x_km;
            cy += net.node(n).y_km;
        }
        cx /= static_cast<double>(taz.nodes.size());
        cy /= static_cast<double>(taz.nodes.size());
        double best = 1e300;
        for (int n : taz.nodes) {
            const double d = std::hypot(net.node(n).x_km - cx, net.node(n).y_km - cy);
            if (d < best) {
                best = d;
                taz.centroid_node = n;
            }
        }
    }
    return tazs;
}

namespace {

// Households [0, owners) own one vehicle each; EV households are the first
// round(owners * penetration) of them and home chargers go to the first
// round(ev * share) EV households. Home nodes are iid uniform, so positional
// selection is distribution-neutral and keeps the counts exact.
struct PopulationCounts {
    int owners = 0;
    int evs = 0;
    int chargers = 0;
};

PopulationCounts population_counts(const ScenarioConfig& config) {
    PopulationCounts c;
    c.owners = round_count(config.household_count * config.vehicle_ownership_share);
    c.evs = round_count(c.owners * config.ev_penetration);
    c.chargers = round_count(c.evs * config.home_charger_share);
    return c;
}

std::vector<int> cbd_nodes(const ScenarioConfig& config, const NetworkGraph& net) {
    const double w = (config.grid_width - 1) * config.spacing_km;
    const double h = (config.grid_height - 1) * config.spacing_km;
    const double ex = w * config.plan.cbd_extent / 2.0;
    const double ey = h * config.plan.cbd_extent / 2.0;
    const double cx = w / 2.0, cy = h / 2.0;
    std::vector<int> nodes;
    for (const Node& n : net.nodes())
        if (std::abs(n.x_km - cx) <= ex + 1e-9 && std::abs(n.y_km - cy) <= ey + 1e-9)
            nodes.push_back(n.id);
    if (nodes.empty()) nodes.push_back(net.num_nodes() / 2);
    return nodes;
}

int draw_location(Rng& rng, const NetworkGraph& net, const std::vector<int>& cbd,
                  double cbd_share, int avoid) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        int node;
        if (rng.next_unit() < cbd_share)
            node = cbd[static_cast<std::size_t>(rng.next_below(cbd.size()))];
        else
            node = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(net.num_nodes())));
        if (node != avoid) return node;
    }
    return (avoid + 1) % net.num_nodes();
}

double travel_estimate_s(const NetworkGraph& net, const ScenarioConfig& config, int a, int b) {
    // Euclidean distance inflated by grid circuity; plans only need a
    // plausible gap between consecutive planned starts.
    return net.euclid_km(a, b) * 1.5 / config.link_speed_kmh * 3600.0;
}

ActivityPlan make_plan(const ScenarioConfig& config, const NetworkGraph& net, Rng& rng,
                       const std::vector<int>& cbd, int vehicle_id, int home) {
    const PlanShape& ps = config.plan;
    ActivityPlan plan;
    plan.vehicle_id = vehicle_id;

    const double u = rng.next_unit();
    const bool has_work = u < ps.share_work_only + ps.share_work_shop;
    const bool has_shop = u >= ps.share_work_only && u < ps.share_work_only + ps.share_work_shop;

    std::vector<Activity> acts;
    if (has_work) {
        const double t_dep = clamp(rng.normal(ps.work_start_mean_s, ps.work_start_std_s),
                                   5.0 * 3600, 10.0 * 3600);
        const double d_work = clamp(rng.normal(ps.work_duration_mean_s, ps.work_duration_std_s),
                                    4.0 * 3600, 9.5 * 3600);
        const int work = draw_location(rng, net, cbd, ps.cbd_share, home);
        acts.push_back({ActivityKind::Home, home, 0.0, t_dep});
        double t = t_dep + travel_estimate_s(net, config, home, work);
        acts.push_back({ActivityKind::Work, work, t, d_work});
        t += d_work;
        int last = work;
        if (has_shop) {
            const double d_shop = clamp(
                rng.normal(ps.shop_duration_mean_s, ps.shop_duration_std_s), 600.0, 7200.0);
            const int shop = draw_location(rng, net, cbd, ps.cbd_share, work);
            t += travel_estimate_s(net, config, work, shop);
            acts.push_back({ActivityKind::Shop, shop, t, d_shop});
            t += d_shop;
            last = shop;
        }
        t += travel_estimate_s(net, config, last, home);
        t = std::min(t, kDay);
        acts.push_back({ActivityKind::Home, home, t, kDay - t});
    } else {
        const double t_dep = clamp(rng.normal(ps.other_start_mean_s, ps.other_start_std_s),
                                   6.0 * 3600, 14.0 * 3600);
        const double d_other = clamp(rng.normal(ps.other_duration_mean_s, ps.other_duration_std_s),
                                     1800.0, 10800.0);
        const int other = draw_location(rng, net, cbd, ps.cbd_share * 0.5, home);
        acts.push_back({ActivityKind::Home, home, 0.0, t_dep});
        double t = t_dep + travel_estimate_s(net, config, home, other);
        acts.push_back({ActivityKind::Other, other, t, d_other});
        t += d_other + travel_estimate_s(net, config, other, home);
        t = std::min(t, kDay);
        acts.push_back({ActivityKind::Home, home, t, kDay - t});
    }
    plan.activities = std::move(acts);
    return plan;
}

}  // namespace

std::vector<Vehicle> assign_fleet(const ScenarioConfig& config,
                                  const std::vector<Household>& households) {
    config.validate();
    const int owners =
        round_count(static_cast<double>(households.size()) * config.vehicle_ownership_share);
    if (owners > static_cast<int>(households.size()))
        throw ConfigError("vehicle owners exceed household count");
    std::vector<Vehicle> vehicles;
    vehicles.reserve(static_cast<std::size_t>(owners));
    Rng fleet_rng(derive_seed(config.seed, kStreamFleet));
    for (int i = 0; i < owners; ++i) {
        Vehicle v;
        v.id = i;
        v.household_id = i;
        v.is_ev = households[static_cast<std::size_t>(i)].owns_ev;
        v.spec.capacity_kwh = config.battery_kwh;
        v.spec.consumption_kwh_per_km = config.consumption_kwh_per_km;
        v.spec.initial_soc = fleet_rng.uniform(config.initial_soc_min, config.initial_soc_max);
        vehicles.push_back(v);
    }
    return vehicles;
}

void generate_population(const ScenarioConfig& config, const NetworkGraph& net,
                         std::vector<Household>& households,
                         std::vector<ActivityPlan>& plans_by_vehicle,
                         std::vector<Vehicle>& vehicles) {
    config.validate();
    const PopulationCounts counts = population_counts(config);
    if (net.num_nodes() < 2) throw ConfigError("network too small for population");

    households.clear();
    households.reserve(static_cast<std::size_t>(config.household_count));
    Rng hh_rng(derive_seed(config.seed, kStreamHouseholds));
    for (int i = 0; i < config.household_count; ++i) {
        Household h;
        h.id = i;
        h.home_node = static_cast<int>(hh_rng.next_below(static_cast<std::uint64_t>(net.num_nodes())));
        h.owns_ev = i < counts.evs;
        h.has_home_charger = h.owns_ev && i < counts.chargers;
        households.push_back(h);
    }

    vehicles = assign_fleet(config, households);

    plans_by_vehicle.clear();
    plans_by_vehicle.reserve(vehicles.size());
    Rng plan_rng(derive_seed(config.seed, kStreamPlans));
    const std::vector<int> cbd = cbd_nodes(config, net);
    for (const Vehicle& v : vehicles) {
        const int home = households[static_cast<std::size_t>(v.household_id)].home_node;
        plans_by_vehicle.push_back(make_plan(config, net, plan_rng, cbd, v.id, home));
    }
}

ScenarioBundle generate_scenario(const ScenarioConfig& config) {
    ScenarioBundle bundle;
    bundle.config = config;
    bundle.network = generate_network(config);
    bundle.tazs = partition_tazs(config, bundle.network);
    generate_population(config, bundle.network, bundle.households, bundle.plans,
                        bundle.vehicles);
    return bundle;
}

ScenarioConfig reference_config() {
    ScenarioConfig c;
    c.seed = 42;
    c.grid_width = 10;
    c.grid_height = 10;
    c.spacing_km = 1.0;
    c.link_speed_kmh = 40.0;
    c.taz_block = 5;
    c.household_count = 2000;
    c.vehicle_ownership_share = 0.8;
    c.ev_penetration = 0.25;
    c.home_charger_share = 0.60;
    // Desk-scale compression: the 9x9 km grid yields ~20-30 km travel days,
    // so a small battery and a low start-of-day SoC keep charging decisions
    // inside the simulated day the way metro-scale distances would.
    c.battery_kwh = 12.0;
    c.consumption_kwh_per_km = 0.16;
    c.initial_soc_min = 0.0;
    c.initial_soc_max = 0.5;
    c.plan.cbd_share = 0.65;
    c.plan.cbd_extent = 0.4;
    return c;
}

}  // namespace evsim
