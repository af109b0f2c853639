#pragma once

#include <map>
#include <string>
#include <vector>

#include "evsim/charging.hpp"
#include "evsim/cmclp.hpp"
#include "evsim/metrics.hpp"
#include "evsim/refine.hpp"
#include "evsim/scenario.hpp"
#include "evsim/simulator.hpp"

namespace evsim {

// FNV-1a over raw bytes; the content-hash embedded in every stage output so
// downstream commands can detect mismatched inputs.
std::string fnv1a_hex(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// key=value pairs carried on the leading "# ..." line of the CSV tables
using MetaMap = std::map<std::string, std::string>;

// -- scenario bundle (JSON, schema "scenario.v1") --------------------------
std::string scenario_to_string(const ScenarioBundle& bundle);
ScenarioBundle scenario_from_string(const std::string& text);
void save_scenario(const std::string& path, const ScenarioBundle& bundle);
ScenarioBundle load_scenario(const std::string& path);

// -- tabular exports (CSV with one meta line and one header line) ----------
std::string latent_to_csv(const std::vector<LatentDemandEvent>& events, const MetaMap& meta);
std::vector<LatentDemandEvent> latent_from_csv(const std::string& text, MetaMap* meta = nullptr);

std::string trips_to_csv(const std::vector<TripRecord>& trips, const MetaMap& meta);
std::string sessions_to_csv(const std::vector<ChargingSession>& sessions, const MetaMap& meta);

std::string deployment_to_csv(const Deployment& deployment, const NetworkGraph& net,
                              const MetaMap& meta);
Deployment deployment_from_csv(const std::string& text, const NetworkGraph& net,
                               MetaMap* meta = nullptr);

std::string trace_to_csv(const RefineTrace& trace, const CostModel& costs, const MetaMap& meta);

// Deterministic textual form of a full event log (used by determinism checks).
std::string eventlog_to_string(const EventLog& log);

// -- KPI report (JSON, schema "kpi.v1") ------------------------------------
std::string kpi_to_string(const KpiReport& kpi, const DistributionStats& stats,
                          const MetaMap& meta);
struct LoadedKpi {
    KpiReport kpi;
    DistributionStats stats;
    MetaMap meta;
};
LoadedKpi kpi_from_string(const std::string& text);

// Comparison table across labeled reports with (REF-CMCLP)/CMCLP deltas for
// matching pairs; refuses mismatched scenario hashes.
std::string comparison_table(const std::vector<LoadedKpi>& reports);

// Minimal standalone SVG histogram (one series of pre-binned counts).
std::string histogram_svg(const std::string& title, const std::vector<int>& counts,
                          double bin_width_s, const std::string& x_label);

}  // namespace evsim
