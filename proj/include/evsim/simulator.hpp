#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evsim/charging.hpp"
#include "evsim/routing.hpp"
#include "evsim/scenario.hpp"

namespace evsim {

enum class Regime { Destination, EnRoute, Combined };
enum class SimMode { LatentGeneration, Evaluation };
enum class SessionKind { Destination, EnRoute, Residential };

std::string regime_name(Regime r);
Regime parse_regime(const std::string& name);
std::string session_kind_name(SessionKind k);
SessionKind parse_session_kind(const std::string& name);

struct SocThresholds {
    double low = 0.0;   // trigger certain at or below
    double high = 1.0;  // trigger never at or above
};

struct ChargingBehaviorParams {
    SocThresholds public_soc{0.2, 0.8};
    SocThresholds residential_soc{0.3, 0.9};
    double enroute_margin = 0.1;   // safety margin on remaining-plan energy
    double enroute_buffer = 0.2;   // recharge past the remaining need by this fraction
    double max_wait_s = 3600.0;    // en-route FIFO wait bound

    void validate() const;  // throws ConfigError
};

// One driven leg. En-route charging splits a planned trip into two legs
// sharing a journey id; od_euclid_km is the straight-line distance between
// the journey's original origin and destination. wait_s is the queueing time
// spent at the charger before the second leg departs.
struct TripRecord {
    int vehicle = 0;
    int origin = 0;
    int destination = 0;
    double depart_s = 0.0;
    double arrive_s = 0.0;
    double network_km = 0.0;
    double od_euclid_km = 0.0;
    double wait_s = 0.0;
    bool enroute_detour = false;
    int journey_id = 0;  // 0 for plain trips
};

struct ChargingSession {
    int id = 0;
    int vehicle = 0;
    int station = -1;  // -1 for residential home charging
    ChargerType type = ChargerType::AC_7_2;
    double start_s = 0.0;
    double end_s = 0.0;
    double energy_kwh = 0.0;
    SessionKind kind = SessionKind::Destination;
};

struct LatentDemandEvent {
    int id = 0;
    double x_km = 0.0;
    double y_km = 0.0;
    double start_s = 0.0;
    double end_s = 0.0;
    double energy_kwh = 0.0;
    ChargerType required_type = ChargerType::AC_7_2;
    SessionKind kind = SessionKind::Destination;  // destination or enroute
};

struct NsocEvent {
    int vehicle = 0;
    double time_s = 0.0;
    double deficit_kwh = 0.0;
};

struct VehicleDaySummary {
    int vehicle = 0;
    double initial_soc_kwh = 0.0;
    double final_soc_kwh = 0.0;
    double driven_km = 0.0;
};

struct EventLog {
    std::vector<TripRecord> trips;
    std::vector<ChargingSession> sessions;
    std::vector<LatentDemandEvent> latent;  // latent-generation mode only
    std::vector<NsocEvent> nsoc;
    std::vector<VehicleDaySummary> vehicles;
};

// Eq.-style piecewise-linear trigger probability: 1 at or below `low`,
// 0 at or above `high`, linear in between. Continuous at both thresholds.
double destination_charge_probability(double soc_fraction, const SocThresholds& thresholds);

// En-route trigger: current energy cannot cover the remaining planned
// distance plus the safety margin (strict-less rule at the boundary).
bool should_charge_enroute(double soc_kwh, double remaining_km, double consumption_kwh_per_km,
                           double margin);

struct ChargeResult {
    double energy_kwh = 0.0;
    double duration_s = 0.0;
};

// Constant-power charging. Energy is limited by the target, the battery
// capacity and the dwell; duration is energy at rated power. The SoC may be
// negative (NSoC accounting); capacity, power, dwell and target must not be.
ChargeResult charge_session(double soc_kwh, double capacity_kwh, double power_kw,
                            double dwell_s, double target_kwh);

// enroute -> DC_150; destination -> AC_7_2 when the dwell suffices at
// 7.2 kW, AC_22 otherwise.
ChargerType assign_required_charger_type(SessionKind kind, double need_kwh, double dwell_s);

// Free plugs of a given type at a station at a point in time. The default
// used by the standalone lookups treats every plug as free.
using PlugAvailability = std::function<int(const Station&, ChargerType, double)>;

// Nearest station within the service radius holding a free charger of the
// requested class; ties broken by smallest station id. `preferred` picks the
// plug type at the chosen station when free.
std::optional<std::pair<int, ChargerType>> find_destination_charger(
    const NetworkGraph& net, int node, const Deployment& deployment, ChargerClass klass,
    double time_s, ChargerType preferred, double radius_km = 1.0,
    const PlugAvailability& free_plugs = {});

// Expected queueing delay for a vehicle reaching the station at
// `arrival_s`. The default used by the standalone lookup reports no wait.
using WaitEstimator = std::function<double(const Station&, ChargerType, double)>;

// DC-capable station minimizing added network distance
// (origin->station->destination minus origin->destination); ties by smallest
// id; empty when no station is usable within the wait bound.
std::optional<std::pair<int, double>> find_enroute_charger(
    const Router& router, int origin, int destination, const Deployment& deployment,
    double time_s, double max_wait_s = 3600.0, const WaitEstimator& wait = {});

// Executes every EV plan chronologically over one day. In latent-generation
// mode public charging demand is recorded as LatentDemandEvents at the
// trigger points with unconstrained capacity; in evaluation mode sessions
// occupy the deployment's plugs. Deterministic per seed.
EventLog simulate_day(const ScenarioBundle& scenario, Regime regime, SimMode mode,
                      const Deployment* deployment, const ChargingBehaviorParams& params,
                      std::uint64_t seed);

}  // namespace evsim
