#include "evsim/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "evsim/errors.hpp"

#include "json.hpp"

namespace evsim {

using nlohmann::json;

namespace {

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

std::string meta_line(const MetaMap& meta) {
    std::string line = "#";
    for (const auto& [k, v] : meta) line += " " + k + "=" + v;
    line += "\n";
    return line;
}

MetaMap parse_meta_line(const std::string& line) {
    MetaMap meta;
    std::istringstream in(line);
    std::string tok;
    in >> tok;  // '#'
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        meta[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return meta;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == sep) {
            out.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

double to_double(const std::string& s) {
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw InputError("bad numeric field: '" + s + "'");
    }
}

int to_int(const std::string& s) {
    try {
        return std::stoi(s);
    } catch (const std::exception&) {
        throw InputError("bad integer field: '" + s + "'");
    }
}

// Reads meta (optional), checks the header, returns data lines.
std::vector<std::string> table_rows(const std::string& text, const std::string& expected_header,
                                    MetaMap* meta) {
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (meta) *meta = parse_meta_line(line);
            continue;
        }
        if (!header_seen) {
            if (line != expected_header)
                throw InputError("unexpected table header: '" + line + "'");
            header_seen = true;
            continue;
        }
        rows.push_back(line);
    }
    if (!header_seen) throw InputError("missing table header");
    return rows;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
    if (!out) throw InputError("short write: " + path);
}

// -------------------------------------------------------------------------
// scenario bundle

std::string scenario_to_string(const ScenarioBundle& bundle) {
    const ScenarioConfig& c = bundle.config;
    json j;
    j["schema"] = "scenario.v1";
    json jc;
    jc["seed"] = c.seed;
    jc["grid_width"] = c.grid_width;
    jc["grid_height"] = c.grid_height;
    jc["spacing_km"] = c.spacing_km;
    jc["link_speed_kmh"] = c.link_speed_kmh;
    jc["taz_block"] = c.taz_block;
    jc["household_count"] = c.household_count;
    jc["vehicle_ownership_share"] = c.vehicle_ownership_share;
    jc["ev_penetration"] = c.ev_penetration;
    jc["home_charger_share"] = c.home_charger_share;
    jc["battery_kwh"] = c.battery_kwh;
    jc["consumption_kwh_per_km"] = c.consumption_kwh_per_km;
    jc["initial_soc_min"] = c.initial_soc_min;
    jc["initial_soc_max"] = c.initial_soc_max;
    json jp;
    jp["work_start_mean_s"] = c.plan.work_start_mean_s;
    jp["work_start_std_s"] = c.plan.work_start_std_s;
    jp["work_duration_mean_s"] = c.plan.work_duration_mean_s;
    jp["work_duration_std_s"] = c.plan.work_duration_std_s;
    jp["shop_duration_mean_s"] = c.plan.shop_duration_mean_s;
    jp["shop_duration_std_s"] = c.plan.shop_duration_std_s;
    jp["other_start_mean_s"] = c.plan.other_start_mean_s;
    jp["other_start_std_s"] = c.plan.other_start_std_s;
    jp["other_duration_mean_s"] = c.plan.other_duration_mean_s;
    jp["other_duration_std_s"] = c.plan.other_duration_std_s;
    jp["share_work_only"] = c.plan.share_work_only;
    jp["share_work_shop"] = c.plan.share_work_shop;
    jp["cbd_share"] = c.plan.cbd_share;
    jp["cbd_extent"] = c.plan.cbd_extent;
    jc["plan"] = jp;
    j["config"] = jc;

    json nodes = json::array();
    for (const Node& n : bundle.network.nodes()) nodes.push_back({n.id, n.x_km, n.y_km});
    json links = json::array();
    for (const Link& l : bundle.network.links())
        links.push_back({l.from, l.to, l.length_km, l.speed_kmh});
    j["network"] = {{"nodes", nodes}, {"links", links}};

    json tazs = json::array();
    for (const Taz& t : bundle.tazs) tazs.push_back({t.id, t.centroid_node, t.nodes});
    j["tazs"] = tazs;

    json households = json::array();
    for (const Household& h : bundle.households)
        households.push_back({h.id, h.home_node, h.owns_ev ? 1 : 0, h.has_home_charger ? 1 : 0});
    j["households"] = households;

    json vehicles = json::array();
    for (const Vehicle& v : bundle.vehicles)
        vehicles.push_back({v.id, v.household_id, v.is_ev ? 1 : 0, v.spec.capacity_kwh,
                            v.spec.consumption_kwh_per_km, v.spec.initial_soc});
    j["vehicles"] = vehicles;

    json plans = json::array();
    for (const ActivityPlan& p : bundle.plans) {
        json acts = json::array();
        for (const Activity& a : p.activities)
            acts.push_back({activity_kind_name(a.kind), a.node, a.start_s, a.duration_s});
        plans.push_back({p.vehicle_id, acts});
    }
    j["plans"] = plans;

    return j.dump(1) + "\n";
}

ScenarioBundle scenario_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("scenario file is not valid JSON: ") + e.what());
    }
    if (j.value("schema", "") != "scenario.v1")
        throw InputError("unsupported scenario schema");

    ScenarioBundle bundle;
    const json& jc = j.at("config");
    ScenarioConfig& c = bundle.config;
    c.seed = jc.at("seed").get<std::uint64_t>();
    c.grid_width = jc.at("grid_width").get<int>();
    c.grid_height = jc.at("grid_height").get<int>();
    c.spacing_km = jc.at("spacing_km").get<double>();
    c.link_speed_kmh = jc.at("link_speed_kmh").get<double>();
    c.taz_block = jc.at("taz_block").get<int>();
    c.household_count = jc.at("household_count").get<int>();
    c.vehicle_ownership_share = jc.at("vehicle_ownership_share").get<double>();
    c.ev_penetration = jc.at("ev_penetration").get<double>();
    c.home_charger_share = jc.at("home_charger_share").get<double>();
    c.battery_kwh = jc.at("battery_kwh").get<double>();
    c.consumption_kwh_per_km = jc.at("consumption_kwh_per_km").get<double>();
    c.initial_soc_min = jc.at("initial_soc_min").get<double>();
    c.initial_soc_max = jc.at("initial_soc_max").get<double>();
    const json& jp = jc.at("plan");
    c.plan.work_start_mean_s = jp.at("work_start_mean_s").get<double>();
    c.plan.work_start_std_s = jp.at("work_start_std_s").get<double>();
    c.plan.work_duration_mean_s = jp.at("work_duration_mean_s").get<double>();
    c.plan.work_duration_std_s = jp.at("work_duration_std_s").get<double>();
    c.plan.shop_duration_mean_s = jp.at("shop_duration_mean_s").get<double>();
    c.plan.shop_duration_std_s = jp.at("shop_duration_std_s").get<double>();
    c.plan.other_start_mean_s = jp.at("other_start_mean_s").get<double>();
    c.plan.other_start_std_s = jp.at("other_start_std_s").get<double>();
    c.plan.other_duration_mean_s = jp.at("other_duration_mean_s").get<double>();
    c.plan.other_duration_std_s = jp.at("other_duration_std_s").get<double>();
    c.plan.share_work_only = jp.at("share_work_only").get<double>();
    c.plan.share_work_shop = jp.at("share_work_shop").get<double>();
    c.plan.cbd_share = jp.at("cbd_share").get<double>();
    c.plan.cbd_extent = jp.at("cbd_extent").get<double>();

    const json& jn = j.at("network");
    for (const json& n : jn.at("nodes")) {
        const int id = bundle.network.add_node(n.at(1).get<double>(), n.at(2).get<double>());
        if (id != n.at(0).get<int>()) throw InputError("non-contiguous node ids");
    }
    for (const json& l : jn.at("links"))
        bundle.network.add_link(l.at(0).get<int>(), l.at(1).get<int>(), l.at(2).get<double>(),
                                l.at(3).get<double>());

    for (const json& t : j.at("tazs")) {
        Taz taz;
        taz.id = t.at(0).get<int>();
        taz.centroid_node = t.at(1).get<int>();
        taz.nodes = t.at(2).get<std::vector<int>>();
        bundle.tazs.push_back(std::move(taz));
    }
    for (const json& h : j.at("households")) {
        Household hh;
        hh.id = h.at(0).get<int>();
        hh.home_node = h.at(1).get<int>();
        hh.owns_ev = h.at(2).get<int>() != 0;
        hh.has_home_charger = h.at(3).get<int>() != 0;
        bundle.households.push_back(hh);
    }
    for (const json& v : j.at("vehicles")) {
        Vehicle veh;
        veh.id = v.at(0).get<int>();
        veh.household_id = v.at(1).get<int>();
        veh.is_ev = v.at(2).get<int>() != 0;
        veh.spec.capacity_kwh = v.at(3).get<double>();
        veh.spec.consumption_kwh_per_km = v.at(4).get<double>();
        veh.spec.initial_soc = v.at(5).get<double>();
        bundle.vehicles.push_back(veh);
    }
    for (const json& p : j.at("plans")) {
        ActivityPlan plan;
        plan.vehicle_id = p.at(0).get<int>();
        for (const json& a : p.at(1)) {
            Activity act;
            act.kind = parse_activity_kind(a.at(0).get<std::string>());
            act.node = a.at(1).get<int>();
            act.start_s = a.at(2).get<double>();
            act.duration_s = a.at(3).get<double>();
            plan.activities.push_back(act);
        }
        bundle.plans.push_back(std::move(plan));
    }
    return bundle;
}

void save_scenario(const std::string& path, const ScenarioBundle& bundle) {
    write_file(path, scenario_to_string(bundle));
}

ScenarioBundle load_scenario(const std::string& path) {
    return scenario_from_string(read_file(path));
}

// -------------------------------------------------------------------------
// tabular exports

namespace {
const char* kLatentHeader = "event_id,x_km,y_km,start_s,end_s,energy_kwh,type,kind";
const char* kTripsHeader =
    "vehicle,origin,destination,depart_s,arrive_s,network_km,od_euclid_km,wait_s,enroute,journey";
const char* kSessionsHeader = "session_id,vehicle,station,type,start_s,end_s,energy_kwh,kind";
const char* kDeploymentHeader = "id,x_km,y_km,n_7_2,n_22,n_150";
const char* kTraceHeader = "iteration,stations,n_7_2,n_22,n_150,cost_aud,changes,objective";
}  // namespace

std::string latent_to_csv(const std::vector<LatentDemandEvent>& events, const MetaMap& meta) {
    std::string out = meta_line(meta);
    out += kLatentHeader;
    out += "\n";
    for (const LatentDemandEvent& e : events) {
        out += std::to_string(e.id) + "," + fmt(e.x_km, 6) + "," + fmt(e.y_km, 6) + "," +
               fmt(e.start_s, 3) + "," + fmt(e.end_s, 3) + "," + fmt(e.energy_kwh, 6) + "," +
               charger_type_name(e.required_type) + "," + session_kind_name(e.kind) + "\n";
    }
    return out;
}

std::vector<LatentDemandEvent> latent_from_csv(const std::string& text, MetaMap* meta) {
    std::vector<LatentDemandEvent> events;
    for (const std::string& row : table_rows(text, kLatentHeader, meta)) {
        const auto f = split(row, ',');
        if (f.size() != 8) throw InputError("bad latent row: '" + row + "'");
        LatentDemandEvent e;
        e.id = to_int(f[0]);
        e.x_km = to_double(f[1]);
        e.y_km = to_double(f[2]);
        e.start_s = to_double(f[3]);
        e.end_s = to_double(f[4]);
        e.energy_kwh = to_double(f[5]);
        e.required_type = parse_charger_type(f[6]);
        e.kind = parse_session_kind(f[7]);
        events.push_back(e);
    }
    return events;
}

std::string trips_to_csv(const std::vector<TripRecord>& trips, const MetaMap& meta) {
    std::string out = meta_line(meta);
    out += kTripsHeader;
    out += "\n";
    for (const TripRecord& t : trips) {
        out += std::to_string(t.vehicle) + "," + std::to_string(t.origin) + "," +
               std::to_string(t.destination) + "," + fmt(t.depart_s, 3) + "," +
               fmt(t.arrive_s, 3) + "," + fmt(t.network_km, 6) + "," + fmt(t.od_euclid_km, 6) +
               "," + fmt(t.wait_s, 3) + "," + (t.enroute_detour ? "1" : "0") + "," +
               std::to_string(t.journey_id) + "\n";
    }
    return out;
}

std::string sessions_to_csv(const std::vector<ChargingSession>& sessions, const MetaMap& meta) {
    std::string out = meta_line(meta);
    out += kSessionsHeader;
    out += "\n";
    for (const ChargingSession& s : sessions) {
        out += std::to_string(s.id) + "," + std::to_string(s.vehicle) + "," +
               std::to_string(s.station) + "," + charger_type_name(s.type) + "," +
               fmt(s.start_s, 3) + "," + fmt(s.end_s, 3) + "," + fmt(s.energy_kwh, 6) + "," +
               session_kind_name(s.kind) + "\n";
    }
    return out;
}

std::string deployment_to_csv(const Deployment& deployment, const NetworkGraph& net,
                              const MetaMap& meta) {
    std::string out = meta_line(meta);
    out += kDeploymentHeader;
    out += "\n";
    for (const Station& st : deployment.stations) {
        const Node& n = net.node(st.node);
        out += std::to_string(st.id) + "," + fmt(n.x_km, 6) + "," + fmt(n.y_km, 6) + "," +
               std::to_string(st.counts[0]) + "," + std::to_string(st.counts[1]) + "," +
               std::to_string(st.counts[2]) + "\n";
    }
    return out;
}

Deployment deployment_from_csv(const std::string& text, const NetworkGraph& net, MetaMap* meta) {
    Deployment dep;
    for (const std::string& row : table_rows(text, kDeploymentHeader, meta)) {
        const auto f = split(row, ',');
        if (f.size() != 6) throw InputError("bad deployment row: '" + row + "'");
        Station st;
        st.id = to_int(f[0]);
        const double x = to_double(f[1]);
        const double y = to_double(f[2]);
        int node = -1;
        double best = 1e300;
        for (const Node& n : net.nodes()) {
            const double d = std::hypot(n.x_km - x, n.y_km - y);
            if (d < best) {
                best = d;
                node = n.id;
            }
        }
        if (node < 0 || best > 1e-4)
            throw InputError("station coordinates do not match a network node");
        st.node = node;
        st.counts = {to_int(f[3]), to_int(f[4]), to_int(f[5])};
        dep.stations.push_back(st);
    }
    dep.validate(net);
    return dep;
}

std::string trace_to_csv(const RefineTrace& trace, const CostModel& costs, const MetaMap& meta) {
    MetaMap m = meta;
    m["converged"] = trace.converged ? "1" : "0";
    std::string out = meta_line(m);
    out += kTraceHeader;
    out += "\n";
    auto row = [&](int iter, const Deployment& d, int changes, const std::string& objective) {
        int n0 = 0, n1 = 0, n2 = 0;
        for (const Station& st : d.stations) {
            n0 += st.counts[0];
            n1 += st.counts[1];
            n2 += st.counts[2];
        }
        out += std::to_string(iter) + "," + std::to_string(d.stations.size()) + "," +
               std::to_string(n0) + "," + std::to_string(n1) + "," + std::to_string(n2) + "," +
               fmt(deployment_cost(d, costs), 2) + "," + std::to_string(changes) + "," +
               objective + "\n";
    };
    for (const RefineIteration& it : trace.iterations)
        row(it.iteration, it.deployment, it.changes, "");
    row(static_cast<int>(trace.iterations.size()), trace.final_deployment, 0,
        fmt(trace.final_objective, 2));
    return out;
}

std::string eventlog_to_string(const EventLog& log) {
    std::string out = trips_to_csv(log.trips, {{"table", "trips"}});
    out += sessions_to_csv(log.sessions, {{"table", "sessions"}});
    out += latent_to_csv(log.latent, {{"table", "latent"}});
    out += "# table=nsoc\nvehicle,time_s,deficit_kwh\n";
    for (const NsocEvent& e : log.nsoc)
        out += std::to_string(e.vehicle) + "," + fmt(e.time_s, 3) + "," + fmt(e.deficit_kwh, 6) +
               "\n";
    out += "# table=vehicles\nvehicle,initial_soc_kwh,final_soc_kwh,driven_km\n";
    for (const VehicleDaySummary& v : log.vehicles)
        out += std::to_string(v.vehicle) + "," + fmt(v.initial_soc_kwh, 6) + "," +
               fmt(v.final_soc_kwh, 6) + "," + fmt(v.driven_km, 6) + "\n";
    return out;
}

// -------------------------------------------------------------------------
// KPI report

std::string kpi_to_string(const KpiReport& kpi, const DistributionStats& stats,
                          const MetaMap& meta) {
    json j;
    j["schema"] = "kpi.v1";
    json jm;
    for (const auto& [k, v] : meta) jm[k] = v;
    j["meta"] = jm;
    json jk;
    jk["charging_revenue_aud"] = kpi.charging_revenue_aud;
    jk["deployment_cost_aud"] = kpi.deployment_cost_aud;
    jk["detour_km_per_vehicle"] = kpi.detour_km_per_vehicle;
    jk["normalized_detour_ratio"] = kpi.normalized_detour_ratio;
    jk["detour_cost_aud"] = kpi.detour_cost_aud;
    jk["nsoc_vehicles"] = kpi.nsoc_vehicles;
    jk["operator_net_benefit_aud"] = kpi.operator_net_benefit_aud;
    jk["user_generalized_cost_aud"] = kpi.user_generalized_cost_aud;
    jk["system_total_cost_aud"] = kpi.system_total_cost_aud;
    j["kpi"] = jk;
    json jd;
    for (const auto& [kind, t] : stats) {
        json jt;
        jt["count"] = t.count;
        jt["start_mean_s"] = t.start_mean_s;
        jt["start_std_s"] = t.start_std_s;
        jt["duration_mean_s"] = t.duration_mean_s;
        jt["duration_std_s"] = t.duration_std_s;
        jt["start_hist"] = t.start_hist;
        jt["duration_hist"] = t.duration_hist;
        jd[session_kind_name(kind)] = jt;
    }
    j["distributions"] = jd;
    return j.dump(1) + "\n";
}

LoadedKpi kpi_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("report is not valid JSON: ") + e.what());
    }
    if (j.value("schema", "") != "kpi.v1") throw InputError("unsupported report schema");
    LoadedKpi loaded;
    for (const auto& [k, v] : j.at("meta").items()) loaded.meta[k] = v.get<std::string>();
    const json& jk = j.at("kpi");
    loaded.kpi.charging_revenue_aud = jk.at("charging_revenue_aud").get<double>();
    loaded.kpi.deployment_cost_aud = jk.at("deployment_cost_aud").get<double>();
    loaded.kpi.detour_km_per_vehicle = jk.at("detour_km_per_vehicle").get<double>();
    loaded.kpi.normalized_detour_ratio = jk.at("normalized_detour_ratio").get<double>();
    loaded.kpi.detour_cost_aud = jk.at("detour_cost_aud").get<double>();
    loaded.kpi.nsoc_vehicles = jk.at("nsoc_vehicles").get<int>();
    loaded.kpi.operator_net_benefit_aud = jk.at("operator_net_benefit_aud").get<double>();
    loaded.kpi.user_generalized_cost_aud = jk.at("user_generalized_cost_aud").get<double>();
    loaded.kpi.system_total_cost_aud = jk.at("system_total_cost_aud").get<double>();
    for (const auto& [name, jt] : j.at("distributions").items()) {
        TagStats t;
        t.count = jt.at("count").get<int>();
        t.start_mean_s = jt.at("start_mean_s").get<double>();
        t.start_std_s = jt.at("start_std_s").get<double>();
        t.duration_mean_s = jt.at("duration_mean_s").get<double>();
        t.duration_std_s = jt.at("duration_std_s").get<double>();
        t.start_hist = jt.at("start_hist").get<std::vector<int>>();
        t.duration_hist = jt.at("duration_hist").get<std::vector<int>>();
        loaded.stats[parse_session_kind(name)] = t;
    }
    return loaded;
}

std::string comparison_table(const std::vector<LoadedKpi>& reports) {
    if (reports.empty()) throw InputError("no reports to compare");
    const std::string scenario = reports.front().meta.count("scenario")
                                     ? reports.front().meta.at("scenario")
                                     : "";
    for (const LoadedKpi& r : reports) {
        const std::string s = r.meta.count("scenario") ? r.meta.at("scenario") : "";
        if (s != scenario)
            throw InputError("reports were produced from different scenarios");
    }

    std::string out =
        "label,regime,revenue_aud,deployment_cost_aud,detour_km_per_vehicle,"
        "detour_ratio,detour_cost_aud,nsoc_vehicles,net_benefit_aud,user_cost_aud,"
        "system_cost_aud\n";
    auto kpi_row = [](const std::string& label, const std::string& regime, const KpiReport& k) {
        return label + "," + regime + "," + fmt(k.charging_revenue_aud, 2) + "," +
               fmt(k.deployment_cost_aud, 2) + "," + fmt(k.detour_km_per_vehicle, 3) + "," +
               fmt(k.normalized_detour_ratio, 4) + "," + fmt(k.detour_cost_aud, 2) + "," +
               std::to_string(k.nsoc_vehicles) + "," + fmt(k.operator_net_benefit_aud, 2) + "," +
               fmt(k.user_generalized_cost_aud, 2) + "," + fmt(k.system_total_cost_aud, 2) + "\n";
    };
    std::map<std::string, const LoadedKpi*> by_label;
    for (const LoadedKpi& r : reports) {
        const std::string label = r.meta.count("label") ? r.meta.at("label") : "unlabeled";
        const std::string regime = r.meta.count("regime") ? r.meta.at("regime") : "";
        out += kpi_row(label, regime, r.kpi);
        by_label[label] = &r;
    }
    // (REF - CMCLP) / CMCLP deltas for matching suffixes
    auto pct = [](double ref, double base) {
        if (base == 0.0) return std::string("");
        return fmt((ref - base) / base * 100.0, 2) + "%";
    };
    for (const auto& [label, report] : by_label) {
        if (label.rfind("CMCLP-", 0) != 0) continue;
        const std::string suffix = label.substr(6);
        auto it = by_label.find("REF-" + suffix);
        if (it == by_label.end()) continue;
        const KpiReport& a = report->kpi;
        const KpiReport& b = it->second->kpi;
        out += "delta-" + suffix + ",," + pct(b.charging_revenue_aud, a.charging_revenue_aud) +
               "," + pct(b.deployment_cost_aud, a.deployment_cost_aud) + "," +
               pct(b.detour_km_per_vehicle, a.detour_km_per_vehicle) + "," +
               pct(b.normalized_detour_ratio, a.normalized_detour_ratio) + "," +
               pct(b.detour_cost_aud, a.detour_cost_aud) + "," +
               pct(b.nsoc_vehicles, a.nsoc_vehicles) + "," +
               pct(b.operator_net_benefit_aud, a.operator_net_benefit_aud) + "," +
               pct(b.user_generalized_cost_aud, a.user_generalized_cost_aud) + "," +
               pct(b.system_total_cost_aud, a.system_total_cost_aud) + "\n";
    }
    return out;
}

std::string histogram_svg(const std::string& title, const std::vector<int>& counts,
                          double bin_width_s, const std::string& x_label) {
    const int width = 640, height = 260, margin = 40;
    const int plot_w = width - 2 * margin, plot_h = height - 2 * margin;
    int max_count = 1;
    for (int c : counts) max_count = std::max(max_count, c);

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(width) + "\" height=\"" + std::to_string(height) + "\">\n";
    svg += "<text x=\"" + std::to_string(width / 2) +
           "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" + title + "</text>\n";
    const double bar_w = counts.empty() ? 0.0 : static_cast<double>(plot_w) / counts.size();
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double h = static_cast<double>(counts[i]) / max_count * plot_h;
        const double x = margin + i * bar_w;
        const double y = margin + (plot_h - h);
        svg += "<rect x=\"" + fmt(x, 1) + "\" y=\"" + fmt(y, 1) + "\" width=\"" +
               fmt(std::max(bar_w - 1.0, 0.5), 1) + "\" height=\"" + fmt(h, 1) +
               "\" fill=\"#4878a8\"/>\n";
    }
    svg += "<line x1=\"" + std::to_string(margin) + "\" y1=\"" + std::to_string(height - margin) +
           "\" x2=\"" + std::to_string(width - margin) + "\" y2=\"" +
           std::to_string(height - margin) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + std::to_string(width / 2) + "\" y=\"" + std::to_string(height - 8) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + x_label + " (bin " +
           fmt(bin_width_s / 60.0, 0) + " min, max " + std::to_string(max_count) + ")</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace evsim
