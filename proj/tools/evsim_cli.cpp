// evsim: two-stage EV charging deployment pipeline.
//
//   generate -> demand -> deploy -> refine -> evaluate -> compare
//
// Every stage reads and writes plain files; outputs embed the content hash
// of their inputs so that later stages can refuse mismatched combinations.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "evsim/cmclp.hpp"
#include "evsim/errors.hpp"
#include "evsim/io.hpp"
#include "evsim/metrics.hpp"
#include "evsim/refine.hpp"
#include "evsim/scenario.hpp"
#include "evsim/simulator.hpp"

namespace fs = std::filesystem;
using namespace evsim;

namespace {

struct BehaviorFlags {
    double theta_public_low = 0.2, theta_public_high = 0.8;
    double theta_res_low = 0.3, theta_res_high = 0.9;
    double margin = 0.1, buffer = 0.2, max_wait_s = 3600.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--theta-public-low", theta_public_low, "Public SoC trigger floor");
        cmd->add_option("--theta-public-high", theta_public_high, "Public SoC trigger ceiling");
        cmd->add_option("--theta-res-low", theta_res_low, "Residential SoC trigger floor");
        cmd->add_option("--theta-res-high", theta_res_high, "Residential SoC trigger ceiling");
        cmd->add_option("--enroute-margin", margin, "En-route safety margin fraction");
        cmd->add_option("--enroute-buffer", buffer, "En-route recharge buffer fraction");
        cmd->add_option("--max-wait", max_wait_s, "En-route queueing bound (s)");
    }

    ChargingBehaviorParams params() const {
        ChargingBehaviorParams p;
        p.public_soc = {theta_public_low, theta_public_high};
        p.residential_soc = {theta_res_low, theta_res_high};
        p.enroute_margin = margin;
        p.enroute_buffer = buffer;
        p.max_wait_s = max_wait_s;
        p.validate();
        return p;
    }
};

void ensure_parent_dir(const std::string& path) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

int cmd_generate(const ScenarioConfig& config, const std::string& out) {
    const ScenarioBundle bundle = generate_scenario(config);
    ensure_parent_dir(out);
    save_scenario(out, bundle);
    int evs = 0;
    for (const Vehicle& v : bundle.vehicles) evs += v.is_ev ? 1 : 0;
    std::cout << "scenario: " << bundle.network.num_nodes() << " nodes, " << bundle.tazs.size()
              << " TAZs, " << bundle.households.size() << " households, "
              << bundle.vehicles.size() << " vehicles (" << evs << " EVs)\n"
              << "wrote " << out << "\n";
    return 0;
}

int cmd_demand(const std::string& scenario_path, const std::string& regime_s,
               const BehaviorFlags& behavior, std::uint64_t seed, const std::string& out) {
    const std::string scenario_text = read_file(scenario_path);
    const ScenarioBundle bundle = scenario_from_string(scenario_text);
    const Regime regime = parse_regime(regime_s);
    const EventLog log = simulate_day(bundle, regime, SimMode::LatentGeneration, nullptr,
                                      behavior.params(), seed);
    MetaMap meta{{"schema", "latent.v1"},
                 {"scenario", fnv1a_hex(scenario_text)},
                 {"regime", regime_s},
                 {"seed", std::to_string(seed)}};
    ensure_parent_dir(out);
    write_file(out, latent_to_csv(log.latent, meta));
    std::cout << "latent demand: " << log.latent.size() << " events, "
              << log.sessions.size() << " residential sessions\nwrote " << out << "\n";
    return 0;
}

int cmd_deploy(const std::string& demand_path, double budget, const std::string& solver,
               const std::string& out, const std::string& report_out) {
    const std::string demand_text = read_file(demand_path);
    MetaMap demand_meta;
    const std::vector<LatentDemandEvent> events = latent_from_csv(demand_text, &demand_meta);
    CostModel costs;
    costs.budget_aud = budget;
    const CmclpInstance inst = build_instance(events, costs);

    std::pair<CmclpSolution, SolveReport> result;
    if (solver == "exact")
        result = solve_exact(inst);
    else if (solver == "heuristic")
        result = solve_heuristic(inst);
    else
        throw UsageError("unknown solver: " + solver);

    const auto violations = verify_solution(inst, result.first);
    if (!violations.empty()) {
        for (const std::string& v : violations) std::cerr << "violation: " << v << "\n";
        throw InternalError("solver produced an infeasible solution");
    }

    // the deployment file stores coordinates, so node resolution happens at load
    Deployment dep;
    for (std::size_t i = 0; i < inst.sites.size(); ++i) {
        if (!result.first.selected[i]) continue;
        const auto& n = result.first.counts[i];
        if (n[0] + n[1] + n[2] == 0) continue;
        Station st;
        st.id = inst.sites[i].id;
        st.node = -1;
        st.counts = n;
        dep.stations.push_back(st);
    }

    MetaMap meta{{"schema", "deployment.v1"},
                 {"demand", fnv1a_hex(demand_text)},
                 {"scenario", demand_meta.count("scenario") ? demand_meta["scenario"] : ""},
                 {"regime", demand_meta.count("regime") ? demand_meta["regime"] : ""},
                 {"solver", solver},
                 {"budget", std::to_string(budget)},
                 {"objective", std::to_string(result.first.objective)}};
    std::string csv = "#";
    for (const auto& [k, v] : meta) csv += " " + k + "=" + v;
    csv += "\nid,x_km,y_km,n_7_2,n_22,n_150\n";
    for (std::size_t i = 0; i < inst.sites.size(); ++i) {
        if (!result.first.selected[i]) continue;
        const auto& n = result.first.counts[i];
        if (n[0] + n[1] + n[2] == 0) continue;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%d,%d,%d\n", inst.sites[i].id,
                      inst.sites[i].x_km, inst.sites[i].y_km, n[0], n[1], n[2]);
        csv += buf;
    }
    ensure_parent_dir(out);
    write_file(out, csv);

    if (!report_out.empty()) {
        std::string rep = "{\n \"schema\": \"solve_report.v1\",\n \"solver\": \"" +
                          result.second.solver + "\",\n \"objective\": " +
                          std::to_string(result.second.objective) + ",\n \"optimal\": " +
                          (result.second.optimal ? "true" : "false") + ",\n \"bound\": " +
                          std::to_string(result.second.bound) + ",\n \"items\": " +
                          std::to_string(inst.items.size()) + ",\n \"sites\": " +
                          std::to_string(inst.sites.size()) + ",\n \"cost_aud\": " +
                          std::to_string(result.first.cost_aud) + ",\n \"wall_s\": " +
                          std::to_string(result.second.wall_s) + "\n}\n";
        ensure_parent_dir(report_out);
        write_file(report_out, rep);
    }

    if (dep.stations.empty())
        std::cerr << "warning: empty deployment (budget too small or no demand)\n";
    std::cout << "deployment: " << dep.stations.size() << " stations, objective "
              << result.first.objective << " of " << inst.items.size() << " items, cost "
              << result.first.cost_aud << " AUD/day\nwrote " << out << "\n";
    return 0;
}

RefineConfig refine_flags_to_config(double u_plus, double u_minus, int n_min, int n_max,
                                    int station_min, int stop_k, int max_iters, bool reseed) {
    RefineConfig rc;
    rc.flh_increment_h = u_plus;
    rc.util_decrement = u_minus;
    rc.n_min = n_min;
    rc.n_max = n_max;
    rc.station_min = station_min;
    rc.stop_after_no_change = stop_k;
    rc.max_iterations = max_iters;
    rc.reseed_each_iteration = reseed;
    rc.validate();
    return rc;
}

int cmd_refine(const std::string& scenario_path, const std::string& regime_s,
               const std::string& deployment_path, const BehaviorFlags& behavior,
               const RefineConfig& rc, double budget, std::uint64_t seed,
               const std::string& out_dir) {
    const std::string scenario_text = read_file(scenario_path);
    const ScenarioBundle bundle = scenario_from_string(scenario_text);
    const std::string dep_text = read_file(deployment_path);
    MetaMap dep_meta;
    const Deployment initial = deployment_from_csv(dep_text, bundle.network, &dep_meta);
    if (dep_meta.count("scenario") && !dep_meta["scenario"].empty() &&
        dep_meta["scenario"] != fnv1a_hex(scenario_text))
        throw InputError("deployment was built from a different scenario");
    const Regime regime = parse_regime(regime_s);
    CostModel costs;
    costs.budget_aud = budget;

    const RefineTrace trace =
        refine_loop(bundle, regime, initial, behavior.params(), rc, costs, seed);

    fs::create_directories(out_dir);
    MetaMap meta{{"schema", "deployment.v1"},
                 {"scenario", fnv1a_hex(scenario_text)},
                 {"regime", regime_s},
                 {"solver", "refine"},
                 {"seed", std::to_string(seed)},
                 {"source", fnv1a_hex(dep_text)}};
    write_file(out_dir + "/refined.csv",
               deployment_to_csv(trace.final_deployment, bundle.network, meta));
    MetaMap trace_meta{{"schema", "trace.v1"},
                       {"scenario", fnv1a_hex(scenario_text)},
                       {"regime", regime_s},
                       {"seed", std::to_string(seed)}};
    write_file(out_dir + "/trace.csv", trace_to_csv(trace, costs, trace_meta));
    for (const RefineIteration& it : trace.iterations) {
        char name[64];
        std::snprintf(name, sizeof(name), "/deployment_iter_%03d.csv", it.iteration);
        MetaMap im = meta;
        im["iteration"] = std::to_string(it.iteration);
        write_file(out_dir + name, deployment_to_csv(it.deployment, bundle.network, im));
    }

    if (!trace.converged) std::cerr << "warning: refinement hit the iteration cap\n";
    std::cout << "refined: " << trace.iterations.size() << " iterations, "
              << trace.final_deployment.stations.size() << " stations, objective "
              << trace.final_objective << "\nwrote " << out_dir << "/refined.csv\n";
    return 0;
}

int cmd_evaluate(const std::string& scenario_path, const std::string& regime_s,
                 const std::string& deployment_path, const BehaviorFlags& behavior,
                 double budget, std::uint64_t seed, const std::string& label,
                 const std::string& out, bool write_logs) {
    const std::string scenario_text = read_file(scenario_path);
    const ScenarioBundle bundle = scenario_from_string(scenario_text);
    const std::string dep_text = read_file(deployment_path);
    MetaMap dep_meta;
    const Deployment dep = deployment_from_csv(dep_text, bundle.network, &dep_meta);
    if (dep_meta.count("scenario") && !dep_meta["scenario"].empty() &&
        dep_meta["scenario"] != fnv1a_hex(scenario_text))
        throw InputError("deployment was built from a different scenario");
    const Regime regime = parse_regime(regime_s);
    CostModel costs;
    costs.budget_aud = budget;

    const EventLog log =
        simulate_day(bundle, regime, SimMode::Evaluation, &dep, behavior.params(), seed);
    const KpiReport kpi = build_kpi(log, dep, costs);
    const DistributionStats stats = behavior_stats(log.sessions);

    MetaMap meta{{"schema", "kpi.v1"},
                 {"label", label},
                 {"regime", regime_s},
                 {"seed", std::to_string(seed)},
                 {"scenario", fnv1a_hex(scenario_text)},
                 {"deployment", fnv1a_hex(dep_text)}};
    ensure_parent_dir(out);
    write_file(out, kpi_to_string(kpi, stats, meta));
    if (write_logs) {
        const fs::path base = fs::path(out).parent_path();
        MetaMap lm{{"scenario", fnv1a_hex(scenario_text)},
                   {"regime", regime_s},
                   {"seed", std::to_string(seed)}};
        write_file((base / (label + "_trips.csv")).string(), trips_to_csv(log.trips, lm));
        write_file((base / (label + "_sessions.csv")).string(),
                   sessions_to_csv(log.sessions, lm));
    }
    std::cout << "kpi[" << label << "]: revenue " << kpi.charging_revenue_aud << ", deployment "
              << kpi.deployment_cost_aud << ", detour " << kpi.detour_cost_aud << ", NSoC "
              << kpi.nsoc_vehicles << ", system " << kpi.system_total_cost_aud << "\nwrote "
              << out << "\n";
    return 0;
}

int cmd_compare(const std::vector<std::string>& report_paths, const std::string& out,
                const std::string& plot_dir) {
    std::vector<LoadedKpi> reports;
    for (const std::string& p : report_paths) reports.push_back(kpi_from_string(read_file(p)));
    const std::string table = comparison_table(reports);
    if (out.empty()) {
        std::cout << table;
    } else {
        ensure_parent_dir(out);
        write_file(out, table);
        std::cout << table << "wrote " << out << "\n";
    }
    if (!plot_dir.empty()) {
        fs::create_directories(plot_dir);
        for (const LoadedKpi& r : reports) {
            const std::string label = r.meta.count("label") ? r.meta.at("label") : "unlabeled";
            for (const auto& [kind, t] : r.stats) {
                const std::string kind_name = session_kind_name(kind);
                write_file(plot_dir + "/" + label + "_" + kind_name + "_start.svg",
                           histogram_svg(label + " " + kind_name + " start times", t.start_hist,
                                         1800.0, "start time"));
                write_file(plot_dir + "/" + label + "_" + kind_name + "_duration.svg",
                           histogram_svg(label + " " + kind_name + " durations", t.duration_hist,
                                         1800.0, "duration"));
            }
        }
        std::cout << "plots in " << plot_dir << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EV charging deployment pipeline: scenario generation, latent demand, "
                 "covering-based deployment, utilization refinement, evaluation"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a synthetic scenario bundle");
    ScenarioConfig gc;
    std::string gen_out = "scenario.json";
    bool gen_reference = false;
    gen->add_option("--seed", gc.seed, "RNG seed");
    gen->add_option("--grid-width", gc.grid_width, "Grid width (nodes)");
    gen->add_option("--grid-height", gc.grid_height, "Grid height (nodes)");
    gen->add_option("--spacing", gc.spacing_km, "Node spacing (km)");
    gen->add_option("--speed", gc.link_speed_kmh, "Link free-flow speed (km/h)");
    gen->add_option("--taz-block", gc.taz_block, "TAZ block side (nodes)");
    gen->add_option("--households", gc.household_count, "Household count");
    gen->add_option("--ownership", gc.vehicle_ownership_share, "Vehicle ownership share");
    gen->add_option("--penetration", gc.ev_penetration, "EV penetration among vehicles");
    gen->add_option("--charger-share", gc.home_charger_share, "Home charger share of EV households");
    gen->add_option("--battery", gc.battery_kwh, "Battery capacity (kWh)");
    gen->add_option("--consumption", gc.consumption_kwh_per_km, "Consumption (kWh/km)");
    gen->add_option("--soc-min", gc.initial_soc_min, "Initial SoC range lower bound");
    gen->add_option("--soc-max", gc.initial_soc_max, "Initial SoC range upper bound");
    gen->add_option("--cbd-share", gc.plan.cbd_share, "Share of work/shop locations in the core");
    gen->add_flag("--reference", gen_reference, "Use the bundled reference configuration");
    gen->add_option("--out", gen_out, "Output scenario file");

    // demand
    auto* dem = app.add_subcommand("demand", "Simulate latent charging demand");
    std::string dem_scenario, dem_regime = "combined", dem_out = "latent.csv";
    std::uint64_t dem_seed = 1;
    BehaviorFlags dem_behavior;
    dem->add_option("--scenario", dem_scenario, "Scenario file")->required();
    dem->add_option("--regime", dem_regime, "destination|enroute|combined");
    dem->add_option("--seed", dem_seed, "Simulation seed");
    dem->add_option("--out", dem_out, "Output latent demand table");
    dem_behavior.attach(dem);

    // deploy
    auto* dep = app.add_subcommand("deploy", "Solve the covering deployment problem");
    std::string dep_demand, dep_solver = "heuristic", dep_out = "deployment.csv",
                dep_report = "";
    double dep_budget = 2600.0;
    dep->add_option("--demand", dep_demand, "Latent demand table")->required();
    dep->add_option("--budget", dep_budget, "Daily budget (AUD)");
    dep->add_option("--solver", dep_solver, "exact|heuristic");
    dep->add_option("--out", dep_out, "Output deployment file");
    dep->add_option("--report", dep_report, "Optional solve report (JSON)");

    // refine
    auto* ref = app.add_subcommand("refine", "Utilization-driven refinement loop");
    std::string ref_scenario, ref_regime = "combined", ref_deployment, ref_out = "refine_out";
    std::uint64_t ref_seed = 1;
    double ref_budget = 2600.0;
    double ref_uplus = 2.0, ref_uminus = 0.05;
    int ref_nmin = 1, ref_nmax = 10, ref_stationmin = 1, ref_k = 2, ref_cap = 50;
    bool ref_reseed = false;
    BehaviorFlags ref_behavior;
    ref->add_option("--scenario", ref_scenario, "Scenario file")->required();
    ref->add_option("--regime", ref_regime, "destination|enroute|combined");
    ref->add_option("--deployment", ref_deployment, "Initial deployment file")->required();
    ref->add_option("--seed", ref_seed, "Simulation seed");
    ref->add_option("--budget", ref_budget, "Daily budget (AUD), for cost reporting");
    ref->add_option("--u-plus", ref_uplus, "FLH increment threshold (h)");
    ref->add_option("--u-minus", ref_uminus, "Utilization decrement threshold");
    ref->add_option("--n-min", ref_nmin, "Per-type charger floor");
    ref->add_option("--n-max", ref_nmax, "Per-station charger ceiling");
    ref->add_option("--station-min", ref_stationmin, "Station removal threshold");
    ref->add_option("--stop-k", ref_k, "Consecutive no-change iterations to stop");
    ref->add_option("--max-iters", ref_cap, "Hard iteration cap");
    ref->add_flag("--reseed", ref_reseed, "Reseed the simulation each iteration");
    ref->add_option("--out", ref_out, "Output directory");
    ref_behavior.attach(ref);

    // evaluate
    auto* eva = app.add_subcommand("evaluate", "Evaluate a deployment and write the KPI report");
    std::string eva_scenario, eva_regime = "combined", eva_deployment, eva_label = "run",
                eva_out = "kpi.json";
    std::uint64_t eva_seed = 1;
    double eva_budget = 2600.0;
    bool eva_logs = false;
    BehaviorFlags eva_behavior;
    eva->add_option("--scenario", eva_scenario, "Scenario file")->required();
    eva->add_option("--regime", eva_regime, "destination|enroute|combined");
    eva->add_option("--deployment", eva_deployment, "Deployment file")->required();
    eva->add_option("--seed", eva_seed, "Simulation seed");
    eva->add_option("--budget", eva_budget, "Daily budget (AUD), for cost reporting");
    eva->add_option("--label", eva_label, "Report label (e.g. CMCLP-C)");
    eva->add_option("--out", eva_out, "Output KPI report (JSON)");
    eva->add_flag("--logs", eva_logs, "Also write trips/sessions tables");
    eva_behavior.attach(eva);

    // compare
    auto* cmp = app.add_subcommand("compare", "Align KPI reports into one comparison table");
    std::vector<std::string> cmp_reports;
    std::string cmp_out = "", cmp_plots = "";
    cmp->add_option("--reports", cmp_reports, "KPI report files")->required()->expected(-1);
    cmp->add_option("--out", cmp_out, "Output table (default: stdout only)");
    cmp->add_option("--plots", cmp_plots, "Directory for SVG histograms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);  // CLI11 prints usage; nonzero on error
    }

    try {
        if (gen->parsed()) {
            if (gen_reference) {
                ScenarioConfig rc = reference_config();
                // explicit flags still override the reference values
                if (gen->count("--seed")) rc.seed = gc.seed;
                if (gen->count("--soc-min")) rc.initial_soc_min = gc.initial_soc_min;
                if (gen->count("--soc-max")) rc.initial_soc_max = gc.initial_soc_max;
                if (gen->count("--penetration")) rc.ev_penetration = gc.ev_penetration;
                if (gen->count("--households")) rc.household_count = gc.household_count;
                return cmd_generate(rc, gen_out);
            }
            return cmd_generate(gc, gen_out);
        }
        if (dem->parsed()) return cmd_demand(dem_scenario, dem_regime, dem_behavior, dem_seed, dem_out);
        if (dep->parsed()) return cmd_deploy(dep_demand, dep_budget, dep_solver, dep_out, dep_report);
        if (ref->parsed()) {
            const RefineConfig rc = refine_flags_to_config(ref_uplus, ref_uminus, ref_nmin,
                                                           ref_nmax, ref_stationmin, ref_k,
                                                           ref_cap, ref_reseed);
            return cmd_refine(ref_scenario, ref_regime, ref_deployment, ref_behavior, rc,
                              ref_budget, ref_seed, ref_out);
        }
        if (eva->parsed())
            return cmd_evaluate(eva_scenario, eva_regime, eva_deployment, eva_behavior,
                                eva_budget, eva_seed, eva_label, eva_out, eva_logs);
        if (cmp->parsed()) return cmd_compare(cmp_reports, cmp_out, cmp_plots);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
