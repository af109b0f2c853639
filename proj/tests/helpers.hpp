#pragma once

// Hand-built worlds and independent oracles shared by the test suites.
// Everything here is test-only and deliberately avoids the library's own
// routing/matching code paths where it serves as an oracle.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "evsim/cmclp.hpp"
#include "evsim/network.hpp"
#include "evsim/scenario.hpp"
#include "evsim/simulator.hpp"

namespace testutil {

using namespace evsim;

// Plain Dijkstra written independently of Router (oracle for path lengths).
inline std::vector<double> dijkstra_oracle(const NetworkGraph& net, int src) {
    const int n = net.num_nodes();
    std::vector<double> dist(static_cast<std::size_t>(n),
                             std::numeric_limits<double>::infinity());
    dist[static_cast<std::size_t>(src)] = 0.0;
    using E = std::pair<double, int>;
    std::priority_queue<E, std::vector<E>, std::greater<>> pq;
    pq.emplace(0.0, src);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[static_cast<std::size_t>(u)] + 1e-12) continue;
        for (int li : net.out_links(u)) {
            const Link& l = net.links()[static_cast<std::size_t>(li)];
            if (d + l.length_km < dist[static_cast<std::size_t>(l.to)] - 1e-12) {
                dist[static_cast<std::size_t>(l.to)] = d + l.length_km;
                pq.emplace(dist[static_cast<std::size_t>(l.to)], l.to);
            }
        }
    }
    return dist;
}

// Breadth-first reachable set (oracle for connectivity checks).
inline int bfs_reachable(const NetworkGraph& net, int src, bool reversed) {
    const int n = net.num_nodes();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const Link& l : net.links()) {
        if (reversed)
            adj[static_cast<std::size_t>(l.to)].push_back(l.from);
        else
            adj[static_cast<std::size_t>(l.from)].push_back(l.to);
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::queue<int> q;
    q.push(src);
    seen[static_cast<std::size_t>(src)] = 1;
    int count = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++count;
                q.push(v);
            }
        }
    }
    return count;
}

struct TinyVehicle {
    std::vector<Activity> activities;
    double initial_soc = 1.0;  // fraction
    double capacity_kwh = 64.0;
    double rate_kwh_per_km = 0.16;
    bool home_charger = false;
};

// One-household-per-vehicle bundle around an arbitrary network.
inline ScenarioBundle custom_bundle(NetworkGraph net, const std::vector<TinyVehicle>& defs) {
    ScenarioBundle b;
    b.network = std::move(net);
    Taz taz;
    taz.id = 0;
    taz.centroid_node = 0;
    for (const Node& n : b.network.nodes()) taz.nodes.push_back(n.id);
    b.tazs.push_back(taz);
    for (int i = 0; i < static_cast<int>(defs.size()); ++i) {
        const TinyVehicle& d = defs[static_cast<std::size_t>(i)];
        Household h;
        h.id = i;
        h.home_node = d.activities.front().node;
        h.owns_ev = true;
        h.has_home_charger = d.home_charger;
        b.households.push_back(h);
        Vehicle v;
        v.id = i;
        v.household_id = i;
        v.is_ev = true;
        v.spec = VehicleSpec{d.capacity_kwh, d.rate_kwh_per_km, d.initial_soc};
        b.vehicles.push_back(v);
        ActivityPlan p;
        p.vehicle_id = i;
        p.activities = d.activities;
        b.plans.push_back(std::move(p));
    }
    return b;
}

// H at `home`, one activity at `away`, H again; planned times chosen so the
// vehicle departs at `depart_s` and dwells `dwell_s` at the away node.
inline std::vector<Activity> simple_plan(int home, int away, double depart_s, double dwell_s) {
    return {
        Activity{ActivityKind::Home, home, 0.0, depart_s},
        Activity{ActivityKind::Work, away, depart_s, dwell_s},
        Activity{ActivityKind::Home, home, depart_s + dwell_s, 86400.0 - depart_s - dwell_s},
    };
}

// Per-vehicle energy closure for evaluation logs:
// final = initial - driven * rate + delivered session energy.
inline double closure_residual(const ScenarioBundle& bundle, const EventLog& log) {
    double worst = 0.0;
    for (const VehicleDaySummary& s : log.vehicles) {
        const Vehicle& veh = bundle.vehicles[static_cast<std::size_t>(s.vehicle)];
        double delivered = 0.0;
        for (const ChargingSession& c : log.sessions)
            if (c.vehicle == s.vehicle) delivered += c.energy_kwh;
        const double expected = s.initial_soc_kwh -
                                s.driven_km * veh.spec.consumption_kwh_per_km + delivered;
        worst = std::max(worst, std::abs(expected - s.final_soc_kwh));
    }
    return worst;
}

// Fleet-wide closure (covers latent mode, where events are anonymous).
inline double closure_residual_fleet(const ScenarioBundle& bundle, const EventLog& log) {
    double initial = 0.0, final_soc = 0.0, traction = 0.0, delivered = 0.0;
    for (const VehicleDaySummary& s : log.vehicles) {
        const Vehicle& veh = bundle.vehicles[static_cast<std::size_t>(s.vehicle)];
        initial += s.initial_soc_kwh;
        final_soc += s.final_soc_kwh;
        traction += s.driven_km * veh.spec.consumption_kwh_per_km;
    }
    for (const ChargingSession& c : log.sessions) delivered += c.energy_kwh;
    for (const LatentDemandEvent& e : log.latent) delivered += e.energy_kwh;
    return std::abs(initial - traction + delivered - final_soc);
}

// Max concurrency per (station, type) from the session list; independent of
// the library's sweep in compute_flh.
inline bool capacity_respected(const Deployment& dep, const EventLog& log) {
    for (const Station& st : dep.stations) {
        for (ChargerType t : kChargerTypes) {
            std::vector<std::pair<double, int>> bounds;
            for (const ChargingSession& s : log.sessions) {
                if (s.station != st.id || s.type != t) continue;
                bounds.emplace_back(s.start_s, +1);
                bounds.emplace_back(s.end_s, -1);
            }
            std::sort(bounds.begin(), bounds.end(), [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first < b.first;
                return a.second < b.second;
            });
            int busy = 0;
            for (const auto& [time, delta] : bounds) {
                busy += delta;
                if (busy > st.count(t)) return false;
            }
        }
    }
    return true;
}

}  // namespace testutil
