#pragma once

#include <array>
#include <string>
#include <vector>

#include "evsim/charging.hpp"
#include "evsim/network.hpp"
#include "evsim/simulator.hpp"

namespace evsim {

// Daily-equivalent charger and site costs plus the deployment budget.
struct CostModel {
    std::array<double, kNumChargerTypes> capex_aud{1.10, 1.90, 41.1};
    std::array<double, kNumChargerTypes> opex_aud{0.5, 0.8, 12.0};
    double site_ac_aud = 5.48;
    double site_dc_aud = 27.40;
    double budget_aud = 2600.0;

    double charger_cost(ChargerType t) const {
        return capex_aud[static_cast<std::size_t>(t)] + opex_aud[static_cast<std::size_t>(t)];
    }
};

struct CandidateSite {
    int id = 0;
    double x_km = 0.0;
    double y_km = 0.0;
};

// A time-expanded demand item (k, b): one charging event restricted to one
// 30-minute bin, carrying the event's required charger type.
struct DemandItem {
    int event = 0;  // index into CmclpInstance::events
    int bin = 0;
    ChargerType type = ChargerType::AC_7_2;
};

struct CmclpInstance {
    int num_bins = 48;
    double bin_s = 1800.0;
    double radius_km = 1.0;
    std::vector<LatentDemandEvent> events;
    std::vector<DemandItem> items;
    std::vector<CandidateSite> sites;
    std::vector<std::vector<int>> neighborhoods;  // per event: site ids within radius
    CostModel costs;
};

struct CmclpSolution {
    std::vector<char> selected;                          // x_i
    std::vector<std::array<int, kNumChargerTypes>> counts;  // n_{i,p}
    std::vector<int> assignment;  // per item: covering site id, or -1 when uncovered
    int objective = 0;
    double cost_aud = 0.0;
};

struct SolveReport {
    std::string solver;  // "exact" | "heuristic"
    int objective = 0;
    bool optimal = false;
    int bound = 0;  // matching upper bound for exact solves
    double wall_s = 0.0;
};

// One item per 30-minute bin the event overlaps (half-open bins);
// zero-duration events land in the bin containing their start.
std::vector<DemandItem> expand_demand(const std::vector<LatentDemandEvent>& events,
                                      int num_bins = 48, double bin_s = 1800.0);

// Candidate sites are the distinct latent locations (exact coordinate
// equality, first-occurrence order); neighborhoods collect the sites within
// the Euclidean service radius of each event.
void build_candidates(const std::vector<LatentDemandEvent>& events, double radius_km,
                      std::vector<CandidateSite>& sites,
                      std::vector<std::vector<int>>& neighborhoods);

CmclpInstance build_instance(const std::vector<LatentDemandEvent>& events,
                             const CostModel& costs, double radius_km = 1.0);

double deployment_cost(const Deployment& deployment, const CostModel& costs);
double solution_cost(const CmclpInstance& instance, const std::vector<char>& selected,
                     const std::vector<std::array<int, kNumChargerTypes>>& counts);

// Optimal branch-and-bound over (x, n) with an exact per-bin per-type
// assignment subproblem. Refuses instances above the stated size limits.
std::pair<CmclpSolution, SolveReport> solve_exact(const CmclpInstance& instance);

// Greedy coverage-per-cost opening followed by drop/add/swap local search.
// Never violates the covering, linking, capacity or budget constraints.
std::pair<CmclpSolution, SolveReport> solve_heuristic(const CmclpInstance& instance);

// Empty result iff the solution satisfies all four constraint families.
// Each violation message is prefixed with "eq3:", "eq4:", "eq5:" or "eq6:".
std::vector<std::string> verify_solution(const CmclpInstance& instance,
                                         const CmclpSolution& solution);

// Selected sites with at least one charger become stations; candidate
// coordinates are resolved to network nodes.
Deployment to_deployment(const CmclpInstance& instance, const CmclpSolution& solution,
                         const NetworkGraph& net);

}  // namespace evsim
