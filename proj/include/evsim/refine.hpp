#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "evsim/charging.hpp"
#include "evsim/cmclp.hpp"
#include "evsim/simulator.hpp"

namespace evsim {

// Per (station, type) usage of one evaluation horizon: delivered energy,
// theoretical capacity n * P * T, energy-normalized utilization and
// full-load hours. Types with zero installed chargers are omitted.
struct UtilizationEntry {
    int station = 0;
    ChargerType type = ChargerType::AC_7_2;
    int chargers = 0;
    double energy_kwh = 0.0;
    double capacity_kwh = 0.0;
    double utilization = 0.0;
    double full_load_h = 0.0;
};

struct UtilizationReport {
    double horizon_h = 24.0;
    std::vector<UtilizationEntry> entries;  // ascending (station, type)

    const UtilizationEntry* find(int station, ChargerType type) const;
};

struct RefineConfig {
    double flh_increment_h = 2.0;      // u+: add a charger at or above this FLH
    double util_decrement = 0.05;      // u-: drop a charger below this utilization
    int n_min = 1;                     // per-type floor for decrements
    int n_max = 10;                    // per-station charger ceiling for increments
    int station_min = 1;               // stations below this total are removed
    int stop_after_no_change = 2;      // K
    int max_iterations = 50;           // hard cap against limit cycles
    bool reseed_each_iteration = false;

    void validate() const;  // throws ConfigError
};

struct RefineIteration {
    int iteration = 0;
    Deployment deployment;  // deployment the iteration was evaluated under
    UtilizationReport report;
    int changes = 0;  // count differences between this deployment and the next
};

struct RefineTrace {
    std::vector<RefineIteration> iterations;
    Deployment final_deployment;
    bool converged = false;
    double final_objective = 0.0;  // system total cost of the final evaluation
};

// Energy per (station, type) from public sessions, Eq.-style capacity
// normalization. Sessions referencing stations or types absent from the
// deployment raise a consistency error.
UtilizationReport compute_utilization(const std::vector<ChargingSession>& sessions,
                                      const Deployment& deployment, double horizon_h);

// Full-load hours: the measure of time during which every installed charger
// of the type is simultaneously occupied (sweep over session intervals).
std::map<std::pair<int, int>, double> compute_flh(const std::vector<ChargingSession>& sessions,
                                                  const Deployment& deployment);

// Builds the combined report (utilization + FLH).
UtilizationReport build_report(const std::vector<ChargingSession>& sessions,
                               const Deployment& deployment, double horizon_h);

// One rule pass: per station in ascending id and type in fixed order,
// increment on FLH >= u+ (respecting the station ceiling), else decrement on
// utilization < u- (respecting the per-type floor); stations falling below
// the station minimum are removed. Locations never change; stations are
// never added.
Deployment refine_step(const Deployment& deployment, const UtilizationReport& report,
                       const RefineConfig& config);

// Alternates evaluation-mode simulation and refine_step until K consecutive
// unchanged iterations or the hard cap, then evaluates the final deployment
// once more for the closing objective (system total cost).
RefineTrace refine_loop(const ScenarioBundle& scenario, Regime regime,
                        const Deployment& initial, const ChargingBehaviorParams& params,
                        const RefineConfig& config, const CostModel& costs,
                        std::uint64_t seed);

}  // namespace evsim
