#include "evsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "evsim/errors.hpp"

namespace evsim {

double charging_revenue(const std::vector<ChargingSession>& sessions,
                        const ChargingMargins& margins) {
    double total = 0.0;
    for (const ChargingSession& s : sessions) {
        if (s.kind == SessionKind::Residential) continue;
        total += s.energy_kwh * margins.of(s.type);
    }
    return total;
}

DetourMetrics detour_metrics(const std::vector<TripRecord>& trips, const UserCostRates& rates) {
    struct Journey {
        int vehicle = 0;
        double network_km = 0.0;
        double euclid_km = 0.0;
        double travel_s = 0.0;
        double wait_s = 0.0;
    };
    std::map<std::pair<int, int>, Journey> journeys;  // (vehicle, journey id)
    for (const TripRecord& t : trips) {
        if (!t.enroute_detour) continue;
        Journey& j = journeys[{t.vehicle, t.journey_id}];
        j.vehicle = t.vehicle;
        j.network_km += t.network_km;
        j.euclid_km = t.od_euclid_km;  // same value on both legs
        j.travel_s += t.arrive_s - t.depart_s;
        j.wait_s += t.wait_s;
    }

    DetourMetrics m;
    if (journeys.empty()) return m;  // (0, 1.0) by convention

    std::map<int, double> per_vehicle_km;
    double ratio_sum = 0.0;
    for (const auto& [key, j] : journeys) {
        const double baseline = 1.4 * j.euclid_km;
        const double detour_km = std::max(0.0, j.network_km - baseline);
        per_vehicle_km[j.vehicle] += detour_km;
        ratio_sum += baseline > 0.0 ? j.network_km / baseline : 1.0;

        // detour share of driving time plus queueing time
        const double detour_time_h =
            (j.network_km > 0.0 ? j.travel_s / 3600.0 * (detour_km / j.network_km) : 0.0) +
            j.wait_s / 3600.0;
        m.cost_aud += detour_km * rates.operating_aud_per_km +
                      detour_time_h * rates.value_of_time_aud_per_h;
        ++m.journeys;
    }
    double km_sum = 0.0;
    for (const auto& [veh, km] : per_vehicle_km) km_sum += km;
    m.vehicles = static_cast<int>(per_vehicle_km.size());
    m.km_per_vehicle = km_sum / static_cast<double>(per_vehicle_km.size());
    m.normalized_ratio = ratio_sum / static_cast<double>(journeys.size());
    return m;
}

int nsoc_count(const EventLog& log) {
    std::set<int> vehicles;
    for (const NsocEvent& e : log.nsoc) vehicles.insert(e.vehicle);
    return static_cast<int>(vehicles.size());
}

std::tuple<double, double, double> system_costs(double revenue_aud, double deployment_cost_aud,
                                                double detour_cost_aud, int nsoc_vehicles,
                                                double nsoc_penalty_aud) {
    const double net_benefit = revenue_aud - deployment_cost_aud;
    const double user_cost = detour_cost_aud + nsoc_penalty_aud * nsoc_vehicles;
    const double system_cost = deployment_cost_aud + user_cost;
    return {net_benefit, user_cost, system_cost};
}

DistributionStats behavior_stats(const std::vector<ChargingSession>& sessions) {
    struct Acc {
        double start_sum = 0.0, start_sq = 0.0;
        double dur_sum = 0.0, dur_sq = 0.0;
        int n = 0;
    };
    std::map<SessionKind, Acc> accs;
    for (const ChargingSession& s : sessions) {
        Acc& a = accs[s.kind];
        const double dur = s.end_s - s.start_s;
        a.start_sum += s.start_s;
        a.start_sq += s.start_s * s.start_s;
        a.dur_sum += dur;
        a.dur_sq += dur * dur;
        ++a.n;
    }
    DistributionStats stats;
    for (const auto& [kind, a] : accs) {
        TagStats t;
        t.count = a.n;
        const double n = static_cast<double>(a.n);
        t.start_mean_s = a.start_sum / n;
        t.duration_mean_s = a.dur_sum / n;
        t.start_std_s = std::sqrt(std::max(0.0, a.start_sq / n - t.start_mean_s * t.start_mean_s));
        t.duration_std_s =
            std::sqrt(std::max(0.0, a.dur_sq / n - t.duration_mean_s * t.duration_mean_s));
        t.start_hist.assign(48, 0);
        t.duration_hist.assign(48, 0);
        stats[kind] = t;
    }
    for (const ChargingSession& s : sessions) {
        TagStats& t = stats[s.kind];
        const int sb = std::clamp(static_cast<int>(s.start_s / 1800.0), 0, 47);
        const int db = std::clamp(static_cast<int>((s.end_s - s.start_s) / 1800.0), 0, 47);
        ++t.start_hist[static_cast<std::size_t>(sb)];
        ++t.duration_hist[static_cast<std::size_t>(db)];
    }
    return stats;
}

KpiReport build_kpi(const EventLog& log, const Deployment& deployment, const CostModel& costs,
                    const ChargingMargins& margins, const UserCostRates& rates) {
    KpiReport r;
    r.charging_revenue_aud = charging_revenue(log.sessions, margins);
    r.deployment_cost_aud = deployment_cost(deployment, costs);
    const DetourMetrics d = detour_metrics(log.trips, rates);
    r.detour_km_per_vehicle = d.km_per_vehicle;
    r.normalized_detour_ratio = d.normalized_ratio;
    r.detour_cost_aud = d.cost_aud;
    r.nsoc_vehicles = nsoc_count(log);
    std::tie(r.operator_net_benefit_aud, r.user_generalized_cost_aud, r.system_total_cost_aud) =
        system_costs(r.charging_revenue_aud, r.deployment_cost_aud, r.detour_cost_aud,
                     r.nsoc_vehicles, rates.nsoc_penalty_aud);
    return r;
}

}  // namespace evsim
