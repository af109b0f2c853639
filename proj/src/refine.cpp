#include "evsim/refine.hpp"

#include <algorithm>

#include "evsim/errors.hpp"
#include "evsim/metrics.hpp"
#include "evsim/rng.hpp"

namespace evsim {

namespace {

std::vector<ChargingSession> public_sessions(const std::vector<ChargingSession>& sessions) {
    std::vector<ChargingSession> out;
    for (const ChargingSession& s : sessions)
        if (s.kind != SessionKind::Residential) out.push_back(s);
    return out;
}

int count_changes(const Deployment& a, const Deployment& b) {
    int changes = 0;
    for (const Station& sa : a.stations) {
        const Station* sb = b.find(sa.id);
        if (!sb) {
            changes += 1;  // station removed
            continue;
        }
        for (ChargerType t : kChargerTypes)
            if (sa.count(t) != sb->count(t)) ++changes;
    }
    for (const Station& sb : b.stations)
        if (!a.find(sb.id)) ++changes;
    return changes;
}

}  // namespace

void RefineConfig::validate() const {
    if (util_decrement <= 0.0 || util_decrement >= 1.0)
        throw ConfigError("utilization decrement threshold must lie in (0,1)");
    if (flh_increment_h <= 0.0 || flh_increment_h > 24.0)
        throw ConfigError("FLH increment threshold must lie in (0,24]");
    if (n_min < 0 || n_min > n_max) throw ConfigError("charger bounds must satisfy 0 <= N_min <= N_max");
    if (station_min < 0) throw ConfigError("station minimum must be non-negative");
    if (stop_after_no_change < 1) throw ConfigError("stop count K must be at least 1");
    if (max_iterations < 1) throw ConfigError("iteration cap must be at least 1");
}

const UtilizationEntry* UtilizationReport::find(int station, ChargerType type) const {
    for (const UtilizationEntry& e : entries)
        if (e.station == station && e.type == type) return &e;
    return nullptr;
}

UtilizationReport compute_utilization(const std::vector<ChargingSession>& sessions,
                                      const Deployment& deployment, double horizon_h) {
    std::map<std::pair<int, int>, double> energy;
    for (const ChargingSession& s : sessions) {
        if (s.kind == SessionKind::Residential) continue;
        const Station* st = deployment.find(s.station);
        if (!st) throw ConsistencyError("session references unknown station");
        if (st->count(s.type) < 1)
            throw ConsistencyError("session references a type absent from the station");
        energy[{s.station, static_cast<int>(s.type)}] += s.energy_kwh;
    }

    UtilizationReport report;
    report.horizon_h = horizon_h;
    for (const Station& st : deployment.stations) {
        for (ChargerType t : kChargerTypes) {
            const int n = st.count(t);
            if (n < 1) continue;  // types with no chargers are omitted
            UtilizationEntry e;
            e.station = st.id;
            e.type = t;
            e.chargers = n;
            auto it = energy.find({st.id, static_cast<int>(t)});
            e.energy_kwh = it == energy.end() ? 0.0 : it->second;
            e.capacity_kwh = n * power_kw(t) * horizon_h;
            e.utilization = e.capacity_kwh > 0.0 ? e.energy_kwh / e.capacity_kwh : 0.0;
            report.entries.push_back(e);
        }
    }
    std::sort(report.entries.begin(), report.entries.end(),
              [](const UtilizationEntry& a, const UtilizationEntry& b) {
                  if (a.station != b.station) return a.station < b.station;
                  return static_cast<int>(a.type) < static_cast<int>(b.type);
              });
    return report;
}

std::map<std::pair<int, int>, double> compute_flh(const std::vector<ChargingSession>& sessions,
                                                  const Deployment& deployment) {
    // boundary events per (station, type); end before start at equal times
    std::map<std::pair<int, int>, std::vector<std::pair<double, int>>> boundaries;
    for (const ChargingSession& s : sessions) {
        if (s.kind == SessionKind::Residential) continue;
        const Station* st = deployment.find(s.station);
        if (!st) throw ConsistencyError("session references unknown station");
        auto& b = boundaries[{s.station, static_cast<int>(s.type)}];
        b.emplace_back(s.start_s, +1);
        b.emplace_back(s.end_s, -1);
    }

    std::map<std::pair<int, int>, double> flh;
    for (const Station& st : deployment.stations)
        for (ChargerType t : kChargerTypes)
            if (st.count(t) >= 1) flh[{st.id, static_cast<int>(t)}] = 0.0;

    for (auto& [key, b] : boundaries) {
        const Station* st = deployment.find(key.first);
        const int n = st->count(static_cast<ChargerType>(key.second));
        if (n < 1) throw ConsistencyError("session references a type absent from the station");
        std::sort(b.begin(), b.end(), [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first < y.first;
            return x.second < y.second;  // -1 before +1
        });
        int busy = 0;
        double prev = 0.0;
        double full = 0.0;
        for (const auto& [t, delta] : b) {
            if (busy == n) full += t - prev;
            if (busy > n) throw ConsistencyError("session concurrency exceeds installed chargers");
            busy += delta;
            prev = t;
        }
        if (busy != 0) throw ConsistencyError("unbalanced session intervals");
        flh[key] = full / 3600.0;
    }
    return flh;
}

UtilizationReport build_report(const std::vector<ChargingSession>& sessions,
                               const Deployment& deployment, double horizon_h) {
    UtilizationReport report = compute_utilization(sessions, deployment, horizon_h);
    const auto flh = compute_flh(sessions, deployment);
    for (UtilizationEntry& e : report.entries) {
        auto it = flh.find({e.station, static_cast<int>(e.type)});
        e.full_load_h = it == flh.end() ? 0.0 : it->second;
    }
    return report;
}

Deployment refine_step(const Deployment& deployment, const UtilizationReport& report,
                       const RefineConfig& config) {
    config.validate();
    Deployment next;
    std::vector<Station> stations = deployment.stations;
    std::sort(stations.begin(), stations.end(),
              [](const Station& a, const Station& b) { return a.id < b.id; });

    for (Station st : stations) {
        int total = st.total();
        for (ChargerType t : kChargerTypes) {
            const int n = st.count(t);
            if (n < 1) continue;  // only types present at the station
            const UtilizationEntry* e = report.find(st.id, t);
            const double flh = e ? e->full_load_h : 0.0;
            const double util = e ? e->utilization : 0.0;
            if (flh >= config.flh_increment_h && total < config.n_max) {
                st.count(t) += 1;
                total += 1;
            } else if (util < config.util_decrement && n > config.n_min) {
                st.count(t) -= 1;
                total -= 1;
            }
        }
        if (total >= config.station_min && total > 0) next.stations.push_back(st);
        // otherwise the station is removed
    }
    return next;
}

RefineTrace refine_loop(const ScenarioBundle& scenario, Regime regime, const Deployment& initial,
                        const ChargingBehaviorParams& params, const RefineConfig& config,
                        const CostModel& costs, std::uint64_t seed) {
    config.validate();
    RefineTrace trace;
    Deployment current = initial;
    int no_change = 0;

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        const std::uint64_t iter_seed =
            config.reseed_each_iteration ? derive_seed(seed, static_cast<std::uint64_t>(iter + 1))
                                         : seed;
        const EventLog log =
            simulate_day(scenario, regime, SimMode::Evaluation, &current, params, iter_seed);
        const UtilizationReport report =
            build_report(public_sessions(log.sessions), current, 24.0);
        Deployment next = refine_step(current, report, config);
        const int changes = count_changes(current, next);

        RefineIteration it;
        it.iteration = iter;
        it.deployment = current;
        it.report = report;
        it.changes = changes;
        trace.iterations.push_back(std::move(it));

        no_change = changes == 0 ? no_change + 1 : 0;
        current = std::move(next);
        if (no_change >= config.stop_after_no_change) {
            trace.converged = true;
            break;
        }
    }

    trace.final_deployment = current;
    const EventLog final_log =
        simulate_day(scenario, regime, SimMode::Evaluation, &current, params, seed);
    trace.final_objective = build_kpi(final_log, current, costs).system_total_cost_aud;
    return trace;
}

}  // namespace evsim
