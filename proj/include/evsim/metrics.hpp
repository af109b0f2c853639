#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "evsim/charging.hpp"
#include "evsim/cmclp.hpp"
#include "evsim/simulator.hpp"

namespace evsim {

// Operator margins per delivered kWh.
struct ChargingMargins {
    std::array<double, kNumChargerTypes> per_kwh{0.10, 0.10, 0.25};

    double of(ChargerType t) const { return per_kwh[static_cast<std::size_t>(t)]; }
};

struct UserCostRates {
    double value_of_time_aud_per_h = 30.0;
    double operating_aud_per_km = 0.4;
    double nsoc_penalty_aud = 100.0;  // per affected vehicle
};

struct DetourMetrics {
    double km_per_vehicle = 0.0;      // mean total detour over vehicles with detours
    double normalized_ratio = 1.0;    // mean of network / (1.4 x Euclidean) over journeys
    double cost_aud = 0.0;
    int journeys = 0;
    int vehicles = 0;
};

struct KpiReport {
    double charging_revenue_aud = 0.0;
    double deployment_cost_aud = 0.0;
    double detour_km_per_vehicle = 0.0;
    double normalized_detour_ratio = 1.0;
    double detour_cost_aud = 0.0;
    int nsoc_vehicles = 0;
    double operator_net_benefit_aud = 0.0;
    double user_generalized_cost_aud = 0.0;
    double system_total_cost_aud = 0.0;
};

struct TagStats {
    double start_mean_s = 0.0;
    double start_std_s = 0.0;  // population convention
    double duration_mean_s = 0.0;
    double duration_std_s = 0.0;
    int count = 0;
    // 48 half-hour bins over the day, for the histogram plots
    std::vector<int> start_hist;
    std::vector<int> duration_hist;
};

// Tags with no sessions are absent, not zero.
using DistributionStats = std::map<SessionKind, TagStats>;

// Revenue over public sessions only; residential charging earns nothing.
double charging_revenue(const std::vector<ChargingSession>& sessions,
                        const ChargingMargins& margins = {});

// Detour distance/ratio over en-route journeys: baseline is 1.4x the
// straight-line origin-destination distance, detours clamp at zero.
DetourMetrics detour_metrics(const std::vector<TripRecord>& trips,
                             const UserCostRates& rates = {});

int nsoc_count(const EventLog& log);

std::tuple<double, double, double> system_costs(double revenue_aud, double deployment_cost_aud,
                                                double detour_cost_aud, int nsoc_vehicles,
                                                double nsoc_penalty_aud = 100.0);

DistributionStats behavior_stats(const std::vector<ChargingSession>& sessions);

KpiReport build_kpi(const EventLog& log, const Deployment& deployment, const CostModel& costs,
                    const ChargingMargins& margins = {}, const UserCostRates& rates = {});

}  // namespace evsim
