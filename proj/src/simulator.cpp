#include "evsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <set>

#include "evsim/errors.hpp"
#include "evsim/rng.hpp"

namespace evsim {

namespace {
constexpr double kDay = 86400.0;
constexpr double kEps = 1e-9;
}  // namespace

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::Destination: return "destination";
        case Regime::EnRoute: return "enroute";
        case Regime::Combined: return "combined";
    }
    throw InternalError("bad regime");
}

Regime parse_regime(const std::string& name) {
    if (name == "destination") return Regime::Destination;
    if (name == "enroute") return Regime::EnRoute;
    if (name == "combined") return Regime::Combined;
    throw InputError("unknown regime: " + name);
}

std::string session_kind_name(SessionKind k) {
    switch (k) {
        case SessionKind::Destination: return "destination";
        case SessionKind::EnRoute: return "enroute";
        case SessionKind::Residential: return "residential";
    }
    throw InternalError("bad session kind");
}

SessionKind parse_session_kind(const std::string& name) {
    if (name == "destination") return SessionKind::Destination;
    if (name == "enroute") return SessionKind::EnRoute;
    if (name == "residential") return SessionKind::Residential;
    throw InputError("unknown session kind: " + name);
}

void ChargingBehaviorParams::validate() const {
    auto check = [](const SocThresholds& t, const char* what) {
        if (!(0.0 <= t.low && t.low < t.high && t.high <= 1.0))
            throw ConfigError(std::string(what) + " thresholds must satisfy 0 <= low < high <= 1");
    };
    check(public_soc, "public");
    check(residential_soc, "residential");
    if (enroute_margin < 0.0) throw ConfigError("en-route margin must be non-negative");
    if (enroute_buffer < 0.0) throw ConfigError("en-route buffer must be non-negative");
    if (max_wait_s < 0.0) throw ConfigError("max wait must be non-negative");
}

double destination_charge_probability(double soc_fraction, const SocThresholds& t) {
    if (!(0.0 <= t.low && t.low < t.high && t.high <= 1.0))
        throw ConfigError("thresholds must satisfy 0 <= low < high <= 1");
    if (soc_fraction <= t.low) return 1.0;
    if (soc_fraction >= t.high) return 0.0;
    return (t.high - soc_fraction) / (t.high - t.low);
}

bool should_charge_enroute(double soc_kwh, double remaining_km, double consumption_kwh_per_km,
                           double margin) {
    return soc_kwh < remaining_km * consumption_kwh_per_km * (1.0 + margin);
}

ChargeResult charge_session(double soc_kwh, double capacity_kwh, double power_kw, double dwell_s,
                            double target_kwh) {
    if (capacity_kwh < 0.0 || power_kw <= 0.0 || dwell_s < 0.0 || target_kwh < 0.0)
        throw SimulationError("charge_session: negative input");
    double energy = std::min({target_kwh - soc_kwh, capacity_kwh - soc_kwh,
                              power_kw * dwell_s / 3600.0});
    energy = std::max(energy, 0.0);
    return ChargeResult{energy, energy / power_kw * 3600.0};
}

ChargerType assign_required_charger_type(SessionKind kind, double need_kwh, double dwell_s) {
    if (kind == SessionKind::EnRoute) return ChargerType::DC_150;
    const double deliverable = power_kw(ChargerType::AC_7_2) * dwell_s / 3600.0;
    return deliverable >= need_kwh ? ChargerType::AC_7_2 : ChargerType::AC_22;
}

std::optional<std::pair<int, ChargerType>> find_destination_charger(
    const NetworkGraph& net, int node, const Deployment& deployment, ChargerClass klass,
    double time_s, ChargerType preferred, double radius_km, const PlugAvailability& free_plugs) {
    auto free = [&](const Station& st, ChargerType t) {
        return free_plugs ? free_plugs(st, t, time_s) : st.count(t);
    };
    const Station* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const Station& st : deployment.stations) {
        const double d = net.euclid_km(node, st.node);
        if (d > radius_km + 1e-9) continue;
        bool usable = false;
        for (ChargerType t : kChargerTypes)
            if (charger_class(t) == klass && st.count(t) > 0 && free(st, t) > 0) usable = true;
        if (!usable) continue;
        if (!best || d < best_d - 1e-12 ||
            (std::abs(d - best_d) <= 1e-12 && st.id < best->id)) {
            best = &st;
            best_d = d;
        }
    }
    if (!best) return std::nullopt;
    if (charger_class(preferred) == klass && best->count(preferred) > 0 &&
        free(*best, preferred) > 0)
        return std::make_pair(best->id, preferred);
    for (ChargerType t : kChargerTypes)
        if (charger_class(t) == klass && best->count(t) > 0 && free(*best, t) > 0)
            return std::make_pair(best->id, t);
    return std::nullopt;
}

std::optional<std::pair<int, double>> find_enroute_charger(const Router& router, int origin,
                                                           int destination,
                                                           const Deployment& deployment,
                                                           double time_s, double max_wait_s,
                                                           const WaitEstimator& wait) {
    const double direct = router.distance_km(origin, destination);
    const Station* best = nullptr;
    double best_detour = std::numeric_limits<double>::infinity();
    for (const Station& st : deployment.stations) {
        if (st.count(ChargerType::DC_150) < 1) continue;
        const double detour = router.distance_km(origin, st.node) +
                              router.distance_km(st.node, destination) - direct;
        if (wait) {
            const double arrival = time_s + router.travel_time_s(origin, st.node);
            if (wait(st, ChargerType::DC_150, arrival) > max_wait_s + 1e-9) continue;
        }
        if (!best || detour < best_detour - 1e-12 ||
            (std::abs(detour - best_detour) <= 1e-12 && st.id < best->id)) {
            best = &st;
            best_detour = detour;
        }
    }
    if (!best) return std::nullopt;
    return std::make_pair(best->id, std::max(best_detour, 0.0));
}

namespace {

enum class EvKind { SessionEnd, ArriveStation, ArriveActivity, WaitTimeout, Depart };

struct Event {
    double t = 0.0;
    int prio = 0;  // kind-derived tie-break
    int veh = 0;   // index into the EV array
    std::uint64_t seq = 0;
    EvKind kind = EvKind::Depart;
    int i1 = 0;               // activity index / station id / wait token
    ChargerType type = ChargerType::AC_7_2;
    double energy = 0.0;      // session energy for SessionEnd
    bool resume_journey = false;
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
        if (a.t != b.t) return a.t > b.t;
        if (a.prio != b.prio) return a.prio > b.prio;
        if (a.veh != b.veh) return a.veh > b.veh;
        return a.seq > b.seq;
    }
};

int prio_of(EvKind k) {
    switch (k) {
        case EvKind::SessionEnd: return 0;
        case EvKind::ArriveStation: return 1;
        case EvKind::ArriveActivity: return 2;
        case EvKind::WaitTimeout: return 3;
        case EvKind::Depart: return 4;
    }
    return 5;
}

struct QueueEntry {
    int veh = 0;
    double arrival_s = 0.0;
    double est_service_s = 0.0;
    std::uint64_t token = 0;
    bool live = true;
};

struct PlugState {
    int busy = 0;
    std::multiset<double> ends;
    std::deque<QueueEntry> queue;
};

struct VehState {
    int veh_id = 0;
    const ActivityPlan* plan = nullptr;
    double capacity = 0.0;
    double rate = 0.0;
    double soc = 0.0;
    double initial_soc = 0.0;
    bool home_charger = false;
    double driven_km = 0.0;
    std::vector<double> suffix_km;

    bool has_pending = false;
    TripRecord pending;

    // en-route journey context
    int j_station = -1;
    int j_station_node = -1;
    int j_next_act = 0;
    double j_leg2_km = 0.0;
    double j_leg2_s = 0.0;
    double j_od_euclid = 0.0;
    int j_id = 0;
    double j_station_arrival = 0.0;
    double j_wait = 0.0;
    bool waiting = false;
    std::uint64_t wait_token = 0;
};

class DaySimulator {
public:
    DaySimulator(const ScenarioBundle& scenario, Regime regime, SimMode mode,
                 const Deployment* deployment, const ChargingBehaviorParams& params,
                 std::uint64_t seed)
        : world_(scenario),
          regime_(regime),
          mode_(mode),
          dep_(deployment),
          params_(params),
          seed_(seed),
          router_(scenario.network) {
        params_.validate();
        if (mode_ == SimMode::Evaluation) {
            if (!dep_) throw UsageError("evaluation mode requires a deployment");
            dep_->validate(world_.network);
        }
    }

    EventLog run();

private:
    void schedule(EvKind kind, double t, int veh, int i1 = 0,
                  ChargerType type = ChargerType::AC_7_2, double energy = 0.0,
                  bool resume = false) {
        events_.push(Event{t, prio_of(kind), veh, ++seq_, kind, i1, type, energy, resume});
    }

    PlugState& plug(int station_id, ChargerType t) {
        return plugs_[{station_id, static_cast<int>(t)}];
    }

    int free_plugs(const Station& st, ChargerType t, double) {
        auto it = plugs_.find({st.id, static_cast<int>(t)});
        const int busy = it == plugs_.end() ? 0 : it->second.busy;
        return st.count(t) - busy;
    }

    double projected_wait(const Station& st, ChargerType t, double arrival_s) {
        const int n = st.count(t);
        if (n <= 0) return std::numeric_limits<double>::infinity();
        auto it = plugs_.find({st.id, static_cast<int>(t)});
        std::priority_queue<double, std::vector<double>, std::greater<>> avail;
        if (it != plugs_.end())
            for (double e : it->second.ends) avail.push(e);
        while (static_cast<int>(avail.size()) < n) avail.push(arrival_s);
        if (it != plugs_.end()) {
            for (const QueueEntry& q : it->second.queue) {
                if (!q.live) continue;
                const double s = avail.top();
                avail.pop();
                avail.push(s + q.est_service_s);
            }
        }
        return std::max(avail.top(), arrival_s) - arrival_s;
    }

    const Station& station(int id) const {
        const Station* st = dep_->find(id);
        if (!st) throw InternalError("unknown station in simulation");
        return *st;
    }

    void finish_leg(VehState& v, double t) {
        if (!v.has_pending) return;
        v.pending.arrive_s = t;
        v.soc -= v.pending.network_km * v.rate;
        v.driven_km += v.pending.network_km;
        log_.trips.push_back(v.pending);
        v.has_pending = false;
        if (v.soc < -kEps) log_.nsoc.push_back({v.veh_id, t, -v.soc});
    }

    double bernoulli_draw(const VehState& v, int activity_index) const {
        return counter_uniform(seed_, static_cast<std::uint64_t>(v.veh_id),
                               static_cast<std::uint64_t>(activity_index));
    }

    void maybe_residential(VehState& v, int act_idx, double t, double dwell_s) {
        if (!v.home_charger) return;
        if (t >= kDay) return;
        dwell_s = std::min(dwell_s, kDay - t);
        if (dwell_s <= 0.0) return;
        const double frac = std::clamp(v.soc / v.capacity, 0.0, 1.0);
        const double p = destination_charge_probability(frac, params_.residential_soc);
        if (bernoulli_draw(v, act_idx) >= p) return;
        const auto cr = charge_session(v.soc, v.capacity, power_kw(ChargerType::AC_7_2),
                                       dwell_s, v.capacity);
        if (cr.energy_kwh <= kEps) return;
        log_.sessions.push_back({next_session_id_++, v.veh_id, -1, ChargerType::AC_7_2, t,
                                 t + cr.duration_s, cr.energy_kwh, SessionKind::Residential});
        v.soc += cr.energy_kwh;  // home plug is private, no contention
    }

    void maybe_destination(VehState& v, int act_idx, int node, double t, double dwell_s) {
        if (regime_ == Regime::EnRoute) return;  // public trigger suppressed
        if (t >= kDay) return;
        dwell_s = std::min(dwell_s, kDay - t);
        if (dwell_s <= 0.0) return;
        const double frac = std::clamp(v.soc / v.capacity, 0.0, 1.0);
        const double p = destination_charge_probability(frac, params_.public_soc);
        if (bernoulli_draw(v, act_idx) >= p) return;
        const double need = v.capacity - v.soc;
        if (need <= kEps) return;
        const ChargerType required =
            assign_required_charger_type(SessionKind::Destination, need, dwell_s);

        if (mode_ == SimMode::LatentGeneration) {
            const auto cr =
                charge_session(v.soc, v.capacity, power_kw(required), dwell_s, v.capacity);
            if (cr.energy_kwh <= kEps) return;
            const Node& n = world_.network.node(node);
            log_.latent.push_back({next_latent_id_++, n.x_km, n.y_km, t, t + cr.duration_s,
                                   cr.energy_kwh, required, SessionKind::Destination});
            v.soc += cr.energy_kwh;
            return;
        }

        auto avail = [this](const Station& st, ChargerType ct, double time) {
            return free_plugs(st, ct, time);
        };
        const auto found = find_destination_charger(world_.network, node, *dep_,
                                                    ChargerClass::AC, t, required, 1.0, avail);
        if (!found) return;  // no free plug in reach: the opportunity lapses
        const auto [sid, type] = *found;
        const auto cr = charge_session(v.soc, v.capacity, power_kw(type), dwell_s, v.capacity);
        if (cr.energy_kwh <= kEps) return;
        occupy(sid, type, t + cr.duration_s);
        log_.sessions.push_back({next_session_id_++, v.veh_id, sid, type, t, t + cr.duration_s,
                                 cr.energy_kwh, SessionKind::Destination});
        schedule(EvKind::SessionEnd, t + cr.duration_s, index_of(v), sid, type, cr.energy_kwh,
                 false);
    }

    void occupy(int station_id, ChargerType t, double end_s) {
        PlugState& ps = plug(station_id, t);
        ps.busy += 1;
        ps.ends.insert(end_s);
        if (ps.busy > station(station_id).count(t))
            throw InternalError("plug concurrency exceeded installed capacity");
    }

    void release(int station_id, ChargerType t, double end_s) {
        PlugState& ps = plug(station_id, t);
        ps.busy -= 1;
        const auto it = ps.ends.find(end_s);
        if (it != ps.ends.end()) ps.ends.erase(it);
    }

    int index_of(const VehState& v) const { return v_index_.at(v.veh_id); }

    void on_activity_arrival(VehState& v, int act_idx, double t) {
        const auto& acts = v.plan->activities;
        const Activity& a = acts[static_cast<std::size_t>(act_idx)];
        if (act_idx == static_cast<int>(acts.size()) - 1) {
            maybe_residential(v, act_idx, t, std::max(0.0, kDay - t));
            return;
        }
        const double planned_end = a.start_s + a.duration_s;
        const double depart = std::max(planned_end, t);
        const double dwell = depart - t;
        if (a.kind == ActivityKind::Home)
            maybe_residential(v, act_idx, t, dwell);
        else
            maybe_destination(v, act_idx, a.node, t, dwell);
        schedule(EvKind::Depart, depart, index_of(v), act_idx);
    }

    void start_direct_trip(VehState& v, int act_idx, double t) {
        const auto& acts = v.plan->activities;
        const int o = acts[static_cast<std::size_t>(act_idx)].node;
        const int d = acts[static_cast<std::size_t>(act_idx) + 1].node;
        const double km = router_.distance_km(o, d);
        const double tt = router_.travel_time_s(o, d);
        v.pending = TripRecord{.vehicle = v.veh_id,
                               .origin = o,
                               .destination = d,
                               .depart_s = t,
                               .arrive_s = t + tt,
                               .network_km = km,
                               .od_euclid_km = world_.network.euclid_km(o, d),
                               .wait_s = 0.0,
                               .enroute_detour = false,
                               .journey_id = 0};
        v.has_pending = true;
        schedule(EvKind::ArriveActivity, t + tt, index_of(v), act_idx + 1);
    }

    double enroute_target(const VehState& v, double remaining_km) const {
        return std::min(remaining_km * v.rate * (1.0 + params_.enroute_buffer), v.capacity);
    }

    void on_depart(VehState& v, int act_idx, double t) {
        const auto& acts = v.plan->activities;
        const int o = acts[static_cast<std::size_t>(act_idx)].node;
        const int d = acts[static_cast<std::size_t>(act_idx) + 1].node;
        const double remaining = v.suffix_km[static_cast<std::size_t>(act_idx)];
        const bool enroute_enabled = regime_ != Regime::Destination;

        if (enroute_enabled && should_charge_enroute(v.soc, remaining, v.rate,
                                                     params_.enroute_margin)) {
            if (mode_ == SimMode::LatentGeneration) {
                double depart = t;
                if (t < kDay) {
                    const double target = enroute_target(v, remaining);
                    double energy =
                        std::max(0.0, std::min(target - v.soc, v.capacity - v.soc));
                    double dur = energy / power_kw(ChargerType::DC_150) * 3600.0;
                    if (t + dur > kDay) {
                        dur = kDay - t;
                        energy = power_kw(ChargerType::DC_150) * dur / 3600.0;
                    }
                    if (energy > kEps) {
                        const Node& n = world_.network.node(o);
                        log_.latent.push_back({next_latent_id_++, n.x_km, n.y_km, t, t + dur,
                                               energy, ChargerType::DC_150,
                                               SessionKind::EnRoute});
                        v.soc += energy;
                        depart = t + dur;
                    }
                }
                start_direct_trip(v, act_idx, depart);
                return;
            }
            auto wait_est = [this](const Station& st, ChargerType ct, double arrival) {
                return projected_wait(st, ct, arrival);
            };
            const auto found = find_enroute_charger(router_, o, d, *dep_, t, params_.max_wait_s,
                                                    wait_est);
            if (found) {
                const Station& st = station(found->first);
                v.j_station = st.id;
                v.j_station_node = st.node;
                v.j_next_act = act_idx + 1;
                v.j_leg2_km = router_.distance_km(st.node, d);
                v.j_leg2_s = router_.travel_time_s(st.node, d);
                v.j_od_euclid = world_.network.euclid_km(o, d);
                v.j_id = ++journey_counter_;
                const double leg1_km = router_.distance_km(o, st.node);
                const double leg1_s = router_.travel_time_s(o, st.node);
                v.pending = TripRecord{.vehicle = v.veh_id,
                                       .origin = o,
                                       .destination = st.node,
                                       .depart_s = t,
                                       .arrive_s = t + leg1_s,
                                       .network_km = leg1_km,
                                       .od_euclid_km = v.j_od_euclid,
                                       .wait_s = 0.0,
                                       .enroute_detour = true,
                                       .journey_id = v.j_id};
                v.has_pending = true;
                schedule(EvKind::ArriveStation, t + leg1_s, index_of(v));
                return;
            }
        }
        start_direct_trip(v, act_idx, t);
    }

    void on_arrive_station(VehState& v, double t) {
        finish_leg(v, t);
        v.j_station_arrival = t;
        const Station& st = station(v.j_station);
        if (free_plugs(st, ChargerType::DC_150, t) > 0) {
            begin_enroute_session(v, t);
            return;
        }
        v.waiting = true;
        v.wait_token = ++token_counter_;
        const double target = enroute_target(v, v.j_leg2_km +
                                                    v.suffix_km[static_cast<std::size_t>(
                                                        v.j_next_act)]);
        const auto est = charge_session(v.soc, v.capacity, power_kw(ChargerType::DC_150),
                                        std::max(0.0, kDay - t), target);
        plug(st.id, ChargerType::DC_150)
            .queue.push_back({index_of(v), t, est.duration_s, v.wait_token, true});
        schedule(EvKind::WaitTimeout, t + params_.max_wait_s, index_of(v),
                 static_cast<int>(v.wait_token));
    }

    // Returns true when a plug was actually occupied.
    bool begin_enroute_session(VehState& v, double t) {
        v.waiting = false;
        v.j_wait = t - v.j_station_arrival;
        const double remaining_after =
            v.j_leg2_km + v.suffix_km[static_cast<std::size_t>(v.j_next_act)];
        const double target = enroute_target(v, remaining_after);
        const auto cr = charge_session(v.soc, v.capacity, power_kw(ChargerType::DC_150),
                                       std::max(0.0, kDay - t), target);
        if (cr.energy_kwh <= kEps) {
            resume_leg2(v, t);
            return false;
        }
        occupy(v.j_station, ChargerType::DC_150, t + cr.duration_s);
        log_.sessions.push_back({next_session_id_++, v.veh_id, v.j_station, ChargerType::DC_150,
                                 t, t + cr.duration_s, cr.energy_kwh, SessionKind::EnRoute});
        schedule(EvKind::SessionEnd, t + cr.duration_s, index_of(v), v.j_station,
                 ChargerType::DC_150, cr.energy_kwh, true);
        return true;
    }

    void resume_leg2(VehState& v, double t) {
        v.pending = TripRecord{
            .vehicle = v.veh_id,
            .origin = v.j_station_node,
            .destination = v.plan->activities[static_cast<std::size_t>(v.j_next_act)].node,
            .depart_s = t,
            .arrive_s = t + v.j_leg2_s,
            .network_km = v.j_leg2_km,
            .od_euclid_km = v.j_od_euclid,
            .wait_s = v.j_wait,
            .enroute_detour = true,
            .journey_id = v.j_id};
        v.has_pending = true;
        schedule(EvKind::ArriveActivity, t + v.j_leg2_s, index_of(v), v.j_next_act);
    }

    void pop_queue(int station_id, ChargerType t, double now) {
        PlugState& ps = plug(station_id, t);
        while (!ps.queue.empty()) {
            if (free_plugs(station(station_id), t, now) <= 0) return;
            QueueEntry entry = ps.queue.front();
            ps.queue.pop_front();
            if (!entry.live) continue;
            VehState& v = vehicles_[static_cast<std::size_t>(entry.veh)];
            if (!v.waiting || v.wait_token != entry.token) continue;
            if (begin_enroute_session(v, now)) return;
        }
    }

    void on_session_end(VehState& v, const Event& ev) {
        v.soc += ev.energy;
        release(ev.i1, ev.type, ev.t);
        pop_queue(ev.i1, ev.type, ev.t);
        if (ev.resume_journey) resume_leg2(v, ev.t);
    }

    void on_wait_timeout(VehState& v, const Event& ev) {
        if (!v.waiting || v.wait_token != static_cast<std::uint64_t>(ev.i1)) return;
        v.waiting = false;
        PlugState& ps = plug(v.j_station, ChargerType::DC_150);
        for (QueueEntry& q : ps.queue)
            if (q.token == v.wait_token) q.live = false;
        v.j_wait = ev.t - v.j_station_arrival;
        resume_leg2(v, ev.t);
    }

    const ScenarioBundle& world_;
    Regime regime_;
    SimMode mode_;
    const Deployment* dep_;
    ChargingBehaviorParams params_;
    std::uint64_t seed_;
    Router router_;

    std::vector<VehState> vehicles_;
    std::map<int, int> v_index_;  // vehicle id -> index
    std::map<std::pair<int, int>, PlugState> plugs_;
    std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
    std::uint64_t seq_ = 0;
    std::uint64_t token_counter_ = 0;
    int journey_counter_ = 0;
    int next_session_id_ = 0;
    int next_latent_id_ = 0;
    EventLog log_;
};

EventLog DaySimulator::run() {
    for (const Vehicle& veh : world_.vehicles) {
        if (!veh.is_ev) continue;
        const ActivityPlan& plan = world_.plan_for(veh.id);
        if (plan.activities.empty()) throw SimulationError("empty activity plan");
        VehState v;
        v.veh_id = veh.id;
        v.plan = &plan;
        v.capacity = veh.spec.capacity_kwh;
        v.rate = veh.spec.consumption_kwh_per_km;
        v.soc = veh.spec.initial_soc * veh.spec.capacity_kwh;
        v.initial_soc = v.soc;
        v.home_charger = world_.household_of(veh).has_home_charger;
        const auto& acts = plan.activities;
        v.suffix_km.assign(acts.size(), 0.0);
        for (int j = static_cast<int>(acts.size()) - 2; j >= 0; --j)
            v.suffix_km[static_cast<std::size_t>(j)] =
                router_.distance_km(acts[static_cast<std::size_t>(j)].node,
                                    acts[static_cast<std::size_t>(j) + 1].node) +
                v.suffix_km[static_cast<std::size_t>(j) + 1];
        v_index_[v.veh_id] = static_cast<int>(vehicles_.size());
        vehicles_.push_back(std::move(v));
    }

    for (VehState& v : vehicles_) on_activity_arrival(v, 0, 0.0);

    while (!events_.empty()) {
        const Event ev = events_.top();
        events_.pop();
        VehState& v = vehicles_[static_cast<std::size_t>(ev.veh)];
        switch (ev.kind) {
            case EvKind::Depart:
                on_depart(v, ev.i1, ev.t);
                break;
            case EvKind::ArriveActivity:
                finish_leg(v, ev.t);
                on_activity_arrival(v, ev.i1, ev.t);
                break;
            case EvKind::ArriveStation:
                on_arrive_station(v, ev.t);
                break;
            case EvKind::SessionEnd:
                on_session_end(v, ev);
                break;
            case EvKind::WaitTimeout:
                on_wait_timeout(v, ev);
                break;
        }
    }

    for (const VehState& v : vehicles_)
        log_.vehicles.push_back({v.veh_id, v.initial_soc, v.soc, v.driven_km});
    return log_;
}

}  // namespace

EventLog simulate_day(const ScenarioBundle& scenario, Regime regime, SimMode mode,
                      const Deployment* deployment, const ChargingBehaviorParams& params,
                      std::uint64_t seed) {
    return DaySimulator(scenario, regime, mode, deployment, params, seed).run();
}

}  // namespace evsim
