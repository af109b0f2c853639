#pragma once

// Brute-force oracles for the covering solver and the utilization metrics.
// These enumerate exhaustively and share no code with the solvers they check.

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "evsim/cmclp.hpp"
#include "evsim/rng.hpp"

namespace testutil {

using namespace evsim;

// Best coverage of one (bin, type) group by trying every item->site choice.
inline int oracle_cell_best(const CmclpInstance& inst, const std::vector<int>& cell_items,
                            std::size_t idx, std::vector<int>& residual) {
    if (idx == cell_items.size()) return 0;
    int best = oracle_cell_best(inst, cell_items, idx + 1, residual);  // leave uncovered
    const DemandItem& item = inst.items[static_cast<std::size_t>(cell_items[idx])];
    for (int s : inst.neighborhoods[static_cast<std::size_t>(item.event)]) {
        if (residual[static_cast<std::size_t>(s)] <= 0) continue;
        residual[static_cast<std::size_t>(s)] -= 1;
        best = std::max(best, 1 + oracle_cell_best(inst, cell_items, idx + 1, residual));
        residual[static_cast<std::size_t>(s)] += 1;
    }
    return best;
}

inline int oracle_coverage(const CmclpInstance& inst, const std::vector<char>& selected,
                           const std::vector<std::array<int, 3>>& counts) {
    std::map<std::pair<int, int>, std::vector<int>> cells;
    for (int i = 0; i < static_cast<int>(inst.items.size()); ++i) {
        const DemandItem& it = inst.items[static_cast<std::size_t>(i)];
        cells[{it.bin, static_cast<int>(it.type)}].push_back(i);
    }
    int total = 0;
    for (const auto& [key, items] : cells) {
        std::vector<int> residual(inst.sites.size(), 0);
        for (std::size_t s = 0; s < inst.sites.size(); ++s)
            if (selected[s]) residual[s] = counts[s][static_cast<std::size_t>(key.second)];
        total += oracle_cell_best(inst, items, 0, residual);
    }
    return total;
}

// Exhaustive enumeration over station selections and charger counts
// (0..n_cap per type) within budget.
inline int oracle_objective(const CmclpInstance& inst, int n_cap) {
    const int m = static_cast<int>(inst.sites.size());
    std::vector<char> selected(static_cast<std::size_t>(m), 0);
    std::vector<std::array<int, 3>> counts(static_cast<std::size_t>(m), {0, 0, 0});
    int best = 0;

    auto site_config_cost = [&](const std::array<int, 3>& n) {
        double c = n[2] >= 1 ? inst.costs.site_dc_aud : inst.costs.site_ac_aud;
        c += n[0] * inst.costs.charger_cost(ChargerType::AC_7_2);
        c += n[1] * inst.costs.charger_cost(ChargerType::AC_22);
        c += n[2] * inst.costs.charger_cost(ChargerType::DC_150);
        return c;
    };

    std::function<void(int, double)> rec = [&](int site, double cost) {
        if (site == m) {
            best = std::max(best, oracle_coverage(inst, selected, counts));
            return;
        }
        rec(site + 1, cost);  // closed
        selected[static_cast<std::size_t>(site)] = 1;
        for (int n0 = 0; n0 <= n_cap; ++n0) {
            for (int n1 = 0; n1 <= n_cap; ++n1) {
                for (int n2 = 0; n2 <= n_cap; ++n2) {
                    if (n0 + n1 + n2 == 0) continue;
                    const std::array<int, 3> cfg{n0, n1, n2};
                    const double c = site_config_cost(cfg);
                    if (cost + c > inst.costs.budget_aud + 1e-9) continue;
                    counts[static_cast<std::size_t>(site)] = cfg;
                    rec(site + 1, cost + c);
                }
            }
        }
        counts[static_cast<std::size_t>(site)] = {0, 0, 0};
        selected[static_cast<std::size_t>(site)] = 0;
    };
    rec(0, 0.0);
    return best;
}

// Seeded random instance within the oracle-suite limits:
// up to 5 sites, up to 12 time-expanded items, peak concurrency <= n_cap.
inline CmclpInstance random_instance(std::uint64_t seed) {
    Rng rng(seed);
    CmclpInstance inst;
    inst.radius_km = 1.0;

    const int n_sites = 1 + static_cast<int>(rng.next_below(5));
    for (int s = 0; s < n_sites; ++s)
        inst.sites.push_back(
            CandidateSite{s, rng.uniform(0.0, 3.0), rng.uniform(0.0, 2.0)});

    const int n_events = 1 + static_cast<int>(rng.next_below(6));
    for (int k = 0; k < n_events; ++k) {
        LatentDemandEvent e;
        e.id = k;
        e.x_km = rng.uniform(0.0, 3.0);
        e.y_km = rng.uniform(0.0, 2.0);
        const int bin = static_cast<int>(rng.next_below(5));
        const int span = 1 + static_cast<int>(rng.next_below(2));
        e.start_s = bin * 1800.0;
        e.end_s = (bin + span) * 1800.0;
        e.energy_kwh = rng.uniform(1.0, 20.0);
        e.required_type = static_cast<ChargerType>(rng.next_below(3));
        e.kind = e.required_type == ChargerType::DC_150 ? SessionKind::EnRoute
                                                        : SessionKind::Destination;
        inst.events.push_back(e);
    }
    inst.items = expand_demand(inst.events, inst.num_bins, inst.bin_s);
    while (inst.items.size() > 12) {
        inst.events.pop_back();
        inst.items = expand_demand(inst.events, inst.num_bins, inst.bin_s);
    }
    inst.neighborhoods.assign(inst.events.size(), {});
    for (std::size_t k = 0; k < inst.events.size(); ++k)
        for (const CandidateSite& s : inst.sites)
            if (std::hypot(inst.events[k].x_km - s.x_km, inst.events[k].y_km - s.y_km) <=
                inst.radius_km + 1e-9)
                inst.neighborhoods[k].push_back(s.id);

    inst.costs.budget_aud = rng.uniform(5.0, 220.0);
    return inst;
}

// Occupancy scan on a 1-second grid (integer-second sessions only).
inline double flh_brute_1s(const std::vector<std::pair<double, double>>& intervals, int n) {
    std::vector<int> diff(86401, 0);
    for (const auto& [start, end] : intervals) {
        diff[static_cast<std::size_t>(start)] += 1;
        diff[static_cast<std::size_t>(end)] -= 1;
    }
    int busy = 0;
    long full_seconds = 0;
    for (int t = 0; t < 86400; ++t) {
        busy += diff[static_cast<std::size_t>(t)];
        if (busy == n) ++full_seconds;
    }
    return full_seconds / 3600.0;
}

}  // namespace testutil
