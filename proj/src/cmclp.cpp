#include "evsim/cmclp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>

#include "evsim/errors.hpp"

namespace evsim {

namespace {

constexpr double kDay = 86400.0;
constexpr double kCostTol = 1e-9;

using Counts = std::vector<std::array<int, kNumChargerTypes>>;

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Items of one (bin, type) cell compete for the same capacity pool.
struct Cell {
    int bin = 0;
    ChargerType type = ChargerType::AC_7_2;
    std::vector<int> items;  // indices into instance.items
};

std::vector<Cell> build_cells(const CmclpInstance& inst) {
    std::map<std::pair<int, int>, std::vector<int>> grouped;
    for (int i = 0; i < static_cast<int>(inst.items.size()); ++i) {
        const DemandItem& it = inst.items[static_cast<std::size_t>(i)];
        grouped[{it.bin, static_cast<int>(it.type)}].push_back(i);
    }
    std::vector<Cell> cells;
    cells.reserve(grouped.size());
    for (auto& [key, items] : grouped)
        cells.push_back(Cell{key.first, static_cast<ChargerType>(key.second), std::move(items)});
    return cells;
}

// Maximum assignment of one cell's items to selected sites with residual
// type capacity: bipartite b-matching via Kuhn augmenting paths. Items are
// processed in ascending index order, so results are deterministic.
class CellMatcher {
public:
    CellMatcher(const CmclpInstance& inst, const std::vector<Cell>& cells)
        : inst_(&inst), cells_(&cells) {}

    // Returns covered count; when `out_assign` is given, records item -> site.
    int match(int cell_idx, const std::vector<char>& selected, const Counts& counts,
              std::vector<int>* out_assign = nullptr) const {
        const Cell& cell = (*cells_)[static_cast<std::size_t>(cell_idx)];
        const std::size_t p = static_cast<std::size_t>(cell.type);
        const int n_sites = static_cast<int>(inst_->sites.size());

        cap_.assign(static_cast<std::size_t>(n_sites), 0);
        for (int s = 0; s < n_sites; ++s)
            if (selected[static_cast<std::size_t>(s)])
                cap_[static_cast<std::size_t>(s)] = counts[static_cast<std::size_t>(s)][p];

        assigned_.assign(static_cast<std::size_t>(n_sites), {});
        site_of_.assign(cell.items.size(), -1);

        int covered = 0;
        for (int local = 0; local < static_cast<int>(cell.items.size()); ++local) {
            visited_.assign(static_cast<std::size_t>(n_sites), 0);
            if (augment(cell, local)) ++covered;
        }
        if (out_assign) {
            for (int local = 0; local < static_cast<int>(cell.items.size()); ++local)
                (*out_assign)[static_cast<std::size_t>(cell.items[static_cast<std::size_t>(local)])] =
                    site_of_[static_cast<std::size_t>(local)];
        }
        return covered;
    }

private:
    bool augment(const Cell& cell, int local) const {
        const DemandItem& item =
            inst_->items[static_cast<std::size_t>(cell.items[static_cast<std::size_t>(local)])];
        for (int s : inst_->neighborhoods[static_cast<std::size_t>(item.event)]) {
            if (visited_[static_cast<std::size_t>(s)] || cap_[static_cast<std::size_t>(s)] == 0)
                continue;
            visited_[static_cast<std::size_t>(s)] = 1;
            auto& bucket = assigned_[static_cast<std::size_t>(s)];
            if (static_cast<int>(bucket.size()) < cap_[static_cast<std::size_t>(s)]) {
                bucket.push_back(local);
                site_of_[static_cast<std::size_t>(local)] = s;
                return true;
            }
            for (std::size_t slot = 0; slot < bucket.size(); ++slot) {
                if (augment(cell, bucket[slot])) {
                    bucket[slot] = local;
                    site_of_[static_cast<std::size_t>(local)] = s;
                    return true;
                }
            }
        }
        return false;
    }

    const CmclpInstance* inst_;
    const std::vector<Cell>* cells_;
    mutable std::vector<int> cap_;
    mutable std::vector<std::vector<int>> assigned_;
    mutable std::vector<int> site_of_;
    mutable std::vector<char> visited_;
};

double site_cost(const CostModel& costs, bool has_dc) {
    return has_dc ? costs.site_dc_aud : costs.site_ac_aud;
}

CmclpSolution empty_solution(const CmclpInstance& inst) {
    CmclpSolution sol;
    sol.selected.assign(inst.sites.size(), 0);
    sol.counts.assign(inst.sites.size(), {0, 0, 0});
    sol.assignment.assign(inst.items.size(), -1);
    return sol;
}

void finalize_solution(const CmclpInstance& inst, const std::vector<Cell>& cells,
                       const CellMatcher& matcher, CmclpSolution& sol) {
    sol.assignment.assign(inst.items.size(), -1);
    int covered = 0;
    for (int c = 0; c < static_cast<int>(cells.size()); ++c)
        covered += matcher.match(c, sol.selected, sol.counts, &sol.assignment);
    sol.objective = covered;
    sol.cost_aud = solution_cost(inst, sol.selected, sol.counts);
}

}  // namespace

std::vector<DemandItem> expand_demand(const std::vector<LatentDemandEvent>& events, int num_bins,
                                      double bin_s) {
    std::vector<DemandItem> items;
    for (int k = 0; k < static_cast<int>(events.size()); ++k) {
        const LatentDemandEvent& e = events[static_cast<std::size_t>(k)];
        if (e.start_s < 0.0 || e.start_s >= num_bins * bin_s || e.end_s < e.start_s ||
            e.end_s > num_bins * bin_s)
            throw InputError("latent event outside the day horizon");
        const int first = static_cast<int>(e.start_s / bin_s);
        int last_excl = static_cast<int>(std::ceil(e.end_s / bin_s));
        if (last_excl <= first) last_excl = first + 1;  // zero-duration: containing bin
        for (int b = first; b < last_excl && b < num_bins; ++b)
            items.push_back(DemandItem{k, b, e.required_type});
    }
    return items;
}

void build_candidates(const std::vector<LatentDemandEvent>& events, double radius_km,
                      std::vector<CandidateSite>& sites,
                      std::vector<std::vector<int>>& neighborhoods) {
    sites.clear();
    std::map<std::pair<double, double>, int> by_coord;
    for (const LatentDemandEvent& e : events) {
        const auto key = std::make_pair(e.x_km, e.y_km);
        if (by_coord.find(key) == by_coord.end()) {
            const int id = static_cast<int>(sites.size());
            by_coord.emplace(key, id);
            sites.push_back(CandidateSite{id, e.x_km, e.y_km});
        }
    }
    neighborhoods.assign(events.size(), {});
    for (std::size_t k = 0; k < events.size(); ++k) {
        const LatentDemandEvent& e = events[k];
        for (const CandidateSite& s : sites) {
            const double d = std::hypot(e.x_km - s.x_km, e.y_km - s.y_km);
            if (d <= radius_km + 1e-9) neighborhoods[k].push_back(s.id);
        }
    }
}

CmclpInstance build_instance(const std::vector<LatentDemandEvent>& events, const CostModel& costs,
                             double radius_km) {
    CmclpInstance inst;
    inst.costs = costs;
    inst.radius_km = radius_km;
    inst.events = events;
    inst.items = expand_demand(events, inst.num_bins, inst.bin_s);
    build_candidates(events, radius_km, inst.sites, inst.neighborhoods);
    return inst;
}

double deployment_cost(const Deployment& deployment, const CostModel& costs) {
    double total = 0.0;
    for (const Station& st : deployment.stations) {
        for (ChargerType t : kChargerTypes) total += st.count(t) * costs.charger_cost(t);
        total += site_cost(costs, st.has_dc());
    }
    return total;
}

double solution_cost(const CmclpInstance& inst, const std::vector<char>& selected,
                     const Counts& counts) {
    double total = 0.0;
    for (std::size_t i = 0; i < inst.sites.size(); ++i) {
        if (!selected[i]) continue;
        bool has_dc = counts[i][static_cast<std::size_t>(ChargerType::DC_150)] >= 1;
        for (ChargerType t : kChargerTypes)
            total += counts[i][static_cast<std::size_t>(t)] * inst.costs.charger_cost(t);
        total += site_cost(inst.costs, has_dc);
    }
    return total;
}

namespace {

// Site/type concurrency bound: more chargers than the peak same-type demand
// reachable from a site can never raise coverage.
Counts concurrency_bounds(const CmclpInstance& inst) {
    Counts bounds(inst.sites.size(), {0, 0, 0});
    std::map<std::pair<int, int>, std::map<int, int>> peak;  // (site,type) -> bin -> count
    for (const DemandItem& item : inst.items) {
        for (int s : inst.neighborhoods[static_cast<std::size_t>(item.event)]) {
            auto& bins = peak[{s, static_cast<int>(item.type)}];
            ++bins[item.bin];
        }
    }
    for (auto& [key, bins] : peak) {
        int mx = 0;
        for (auto& [bin, count] : bins) mx = std::max(mx, count);
        bounds[static_cast<std::size_t>(key.first)][static_cast<std::size_t>(key.second)] = mx;
    }
    return bounds;
}

class ExactSolver {
public:
    explicit ExactSolver(const CmclpInstance& inst)
        : inst_(inst), cells_(build_cells(inst)), matcher_(inst, cells_) {}

    CmclpSolution solve() {
        const int m = static_cast<int>(inst_.sites.size());
        bounds_ = concurrency_bounds(inst_);
        item_masks_.reserve(inst_.items.size());
        for (const DemandItem& item : inst_.items) {
            std::uint32_t mask = 0;
            for (int s : inst_.neighborhoods[static_cast<std::size_t>(item.event)])
                mask |= (1u << s);
            item_masks_.push_back(mask);
        }
        best_ = empty_solution(inst_);
        best_.objective = 0;
        best_.cost_aud = 0.0;
        cur_selected_.assign(static_cast<std::size_t>(m), 0);
        cur_counts_.assign(static_cast<std::size_t>(m), {0, 0, 0});
        recurse(0, 0.0, 0u);
        finalize_solution(inst_, cells_, matcher_, best_);
        return best_;
    }

private:
    int coverable_upper_bound(std::uint32_t open_or_undecided) const {
        int n = 0;
        for (std::uint32_t mask : item_masks_)
            if (mask & open_or_undecided) ++n;
        return n;
    }

    void recurse(int site, double cost, std::uint32_t open_mask) {
        const int m = static_cast<int>(inst_.sites.size());
        std::uint32_t undecided = 0;
        for (int s = site; s < m; ++s) undecided |= (1u << s);
        if (coverable_upper_bound(open_mask | undecided) <= best_.objective) return;

        if (site == m) {
            int covered = 0;
            for (int c = 0; c < static_cast<int>(cells_.size()); ++c)
                covered += matcher_.match(c, cur_selected_, cur_counts_);
            if (covered > best_.objective) {
                best_.objective = covered;
                best_.selected = cur_selected_;
                best_.counts = cur_counts_;
            }
            return;
        }

        // closed branch
        recurse(site + 1, cost, open_mask);

        // open with every count combination within the concurrency bounds
        const auto& ub = bounds_[static_cast<std::size_t>(site)];
        if (ub[0] + ub[1] + ub[2] == 0) return;
        cur_selected_[static_cast<std::size_t>(site)] = 1;
        for (int n0 = 0; n0 <= ub[0]; ++n0) {
            for (int n1 = 0; n1 <= ub[1]; ++n1) {
                for (int n2 = 0; n2 <= ub[2]; ++n2) {
                    if (n0 + n1 + n2 == 0) continue;
                    double c = site_cost(inst_.costs, n2 >= 1);
                    c += n0 * inst_.costs.charger_cost(ChargerType::AC_7_2);
                    c += n1 * inst_.costs.charger_cost(ChargerType::AC_22);
                    c += n2 * inst_.costs.charger_cost(ChargerType::DC_150);
                    if (cost + c > inst_.costs.budget_aud + kCostTol) continue;
                    cur_counts_[static_cast<std::size_t>(site)] = {n0, n1, n2};
                    recurse(site + 1, cost + c, open_mask | (1u << site));
                }
            }
        }
        cur_counts_[static_cast<std::size_t>(site)] = {0, 0, 0};
        cur_selected_[static_cast<std::size_t>(site)] = 0;
    }

    const CmclpInstance& inst_;
    std::vector<Cell> cells_;
    CellMatcher matcher_;
    Counts bounds_;
    std::vector<std::uint32_t> item_masks_;
    CmclpSolution best_;
    std::vector<char> cur_selected_;
    Counts cur_counts_;
};

}  // namespace

std::pair<CmclpSolution, SolveReport> solve_exact(const CmclpInstance& inst) {
    constexpr int kMaxSites = 8;
    constexpr int kMaxItems = 40;
    if (static_cast<int>(inst.sites.size()) > kMaxSites ||
        static_cast<int>(inst.items.size()) > kMaxItems)
        throw SizeError("instance too large for the exact solver (" +
                        std::to_string(inst.sites.size()) + " sites, " +
                        std::to_string(inst.items.size()) + " items)");
    const auto t0 = std::chrono::steady_clock::now();
    ExactSolver solver(inst);
    CmclpSolution sol = solver.solve();
    SolveReport report{"exact", sol.objective, true, sol.objective, elapsed_s(t0)};
    return {std::move(sol), report};
}

namespace {

class HeuristicSolver {
public:
    explicit HeuristicSolver(const CmclpInstance& inst)
        : inst_(inst), cells_(build_cells(inst)), matcher_(inst, cells_) {
        bounds_ = concurrency_bounds(inst_);
        // cells touched by capacity changes at (site, type)
        affected_.assign(inst_.sites.size(), {});
        for (int c = 0; c < static_cast<int>(cells_.size()); ++c) {
            const Cell& cell = cells_[static_cast<std::size_t>(c)];
            std::vector<char> sites_seen(inst_.sites.size(), 0);
            for (int item_idx : cell.items)
                for (int s : inst_.neighborhoods[static_cast<std::size_t>(
                         inst_.items[static_cast<std::size_t>(item_idx)].event)])
                    sites_seen[static_cast<std::size_t>(s)] = 1;
            for (std::size_t s = 0; s < inst_.sites.size(); ++s)
                if (sites_seen[s])
                    affected_[s][static_cast<std::size_t>(cell.type)].push_back(c);
        }
    }

    CmclpSolution solve() {
        sol_ = empty_solution(inst_);
        cell_cov_.assign(cells_.size(), 0);
        total_ = 0;
        cost_ = 0.0;

        greedy_adds();
        bool changed = true;
        int guard = 0;
        const int guard_limit = 20 + 4 * static_cast<int>(inst_.sites.size());
        while (changed && guard++ < guard_limit) {
            changed = false;
            if (drop_pass()) changed = true;
            if (greedy_adds()) changed = true;
            if (swap_pass()) changed = true;
        }
        finalize_solution(inst_, cells_, matcher_, sol_);
        return sol_;
    }

private:
    double add_cost(int site, ChargerType t) const {
        const std::size_t i = static_cast<std::size_t>(site);
        double c = inst_.costs.charger_cost(t);
        const bool dc_now = sol_.counts[i][static_cast<std::size_t>(ChargerType::DC_150)] >= 1;
        if (!sol_.selected[i]) {
            c += site_cost(inst_.costs, t == ChargerType::DC_150);
        } else if (t == ChargerType::DC_150 && !dc_now) {
            c += inst_.costs.site_dc_aud - inst_.costs.site_ac_aud;
        }
        return c;
    }

    int gain_of_change(int site, ChargerType t, int delta, std::vector<int>* scratch) {
        const std::size_t i = static_cast<std::size_t>(site);
        const std::size_t p = static_cast<std::size_t>(t);
        auto sel = sol_.selected;
        auto cnt = sol_.counts;
        cnt[i][p] += delta;
        if (cnt[i][p] < 0) return 0;
        sel[i] = (cnt[i][0] + cnt[i][1] + cnt[i][2]) > 0 || sol_.selected[i];
        if (delta > 0) sel[i] = 1;
        int gain = 0;
        scratch->clear();
        for (int c : affected_[i][p]) {
            const int now = matcher_.match(c, sel, cnt);
            gain += now - cell_cov_[static_cast<std::size_t>(c)];
            scratch->push_back(now);
        }
        return gain;
    }

    void apply_change(int site, ChargerType t, int delta, const std::vector<int>& new_cov) {
        const std::size_t i = static_cast<std::size_t>(site);
        const std::size_t p = static_cast<std::size_t>(t);
        sol_.counts[i][p] += delta;
        const int total = sol_.counts[i][0] + sol_.counts[i][1] + sol_.counts[i][2];
        sol_.selected[i] = total > 0;
        std::size_t idx = 0;
        for (int c : affected_[i][p]) {
            total_ += new_cov[idx] - cell_cov_[static_cast<std::size_t>(c)];
            cell_cov_[static_cast<std::size_t>(c)] = new_cov[idx];
            ++idx;
        }
        cost_ = solution_cost(inst_, sol_.selected, sol_.counts);
    }

    bool greedy_adds() {
        bool any = false;
        std::vector<int> scratch, best_cov;
        while (true) {
            int best_site = -1;
            ChargerType best_type = ChargerType::AC_7_2;
            double best_ratio = 0.0;
            int best_gain = 0;
            double best_cost = 0.0;
            for (int s = 0; s < static_cast<int>(inst_.sites.size()); ++s) {
                for (ChargerType t : kChargerTypes) {
                    const std::size_t p = static_cast<std::size_t>(t);
                    if (sol_.counts[static_cast<std::size_t>(s)][p] >=
                        bounds_[static_cast<std::size_t>(s)][p])
                        continue;  // beyond peak concurrency: no possible gain
                    const double dc = add_cost(s, t);
                    if (cost_ + dc > inst_.costs.budget_aud + kCostTol) continue;
                    const int gain = gain_of_change(s, t, +1, &scratch);
                    if (gain <= 0) continue;
                    const double ratio = gain / dc;
                    if (ratio > best_ratio + 1e-12 ||
                        (std::abs(ratio - best_ratio) <= 1e-12 && gain > best_gain)) {
                        best_ratio = ratio;
                        best_site = s;
                        best_type = t;
                        best_gain = gain;
                        best_cost = dc;
                        best_cov = scratch;
                    }
                }
            }
            (void)best_cost;
            if (best_site < 0) break;
            apply_change(best_site, best_type, +1, best_cov);
            any = true;
        }
        return any;
    }

    bool drop_pass() {
        bool any = false;
        std::vector<int> scratch;
        for (int s = 0; s < static_cast<int>(inst_.sites.size()); ++s) {
            for (ChargerType t : kChargerTypes) {
                const std::size_t p = static_cast<std::size_t>(t);
                while (sol_.counts[static_cast<std::size_t>(s)][p] > 0) {
                    const int gain = gain_of_change(s, t, -1, &scratch);
                    if (gain < 0) break;  // dropping would lose coverage
                    apply_change(s, t, -1, scratch);
                    any = true;
                }
            }
        }
        return any;
    }

    bool swap_pass() {
        std::vector<int> scratch;
        for (int s = 0; s < static_cast<int>(inst_.sites.size()); ++s) {
            for (ChargerType t : kChargerTypes) {
                const std::size_t p = static_cast<std::size_t>(t);
                if (sol_.counts[static_cast<std::size_t>(s)][p] <= 0) continue;
                const double cost_before = cost_;
                const int loss = gain_of_change(s, t, -1, &scratch);
                apply_change(s, t, -1, scratch);  // tentative drop
                for (int s2 = 0; s2 < static_cast<int>(inst_.sites.size()); ++s2) {
                    for (ChargerType t2 : kChargerTypes) {
                        if (s2 == s && t2 == t) continue;
                        const std::size_t p2 = static_cast<std::size_t>(t2);
                        if (sol_.counts[static_cast<std::size_t>(s2)][p2] >=
                            bounds_[static_cast<std::size_t>(s2)][p2])
                            continue;
                        const double dc = add_cost(s2, t2);
                        if (cost_ + dc > inst_.costs.budget_aud + kCostTol) continue;
                        const int gain = gain_of_change(s2, t2, +1, &scratch);
                        if (gain + loss > 0 ||
                            (gain + loss == 0 && cost_ + dc < cost_before - kCostTol)) {
                            apply_change(s2, t2, +1, scratch);
                            return true;
                        }
                    }
                }
                // no improving partner: undo the drop
                gain_of_change(s, t, +1, &scratch);
                apply_change(s, t, +1, scratch);
            }
        }
        return false;
    }

    const CmclpInstance& inst_;
    std::vector<Cell> cells_;
    CellMatcher matcher_;
    Counts bounds_;
    std::vector<std::array<std::vector<int>, kNumChargerTypes>> affected_;
    CmclpSolution sol_;
    std::vector<int> cell_cov_;
    int total_ = 0;
    double cost_ = 0.0;
};

}  // namespace

std::pair<CmclpSolution, SolveReport> solve_heuristic(const CmclpInstance& inst) {
    const auto t0 = std::chrono::steady_clock::now();
    HeuristicSolver solver(inst);
    CmclpSolution sol = solver.solve();
    SolveReport report{"heuristic", sol.objective, false, 0, elapsed_s(t0)};
    return {std::move(sol), report};
}

std::vector<std::string> verify_solution(const CmclpInstance& inst, const CmclpSolution& sol) {
    std::vector<std::string> violations;
    if (sol.selected.size() != inst.sites.size() || sol.counts.size() != inst.sites.size() ||
        sol.assignment.size() != inst.items.size()) {
        violations.push_back("eq3: solution shape does not match the instance");
        return violations;
    }

    std::map<std::tuple<int, int, int>, int> load;  // (site, type, bin) -> assigned
    int covered = 0;
    for (std::size_t i = 0; i < inst.items.size(); ++i) {
        const int site = sol.assignment[i];
        if (site < 0) continue;
        ++covered;
        const DemandItem& item = inst.items[i];
        const auto& hood = inst.neighborhoods[static_cast<std::size_t>(item.event)];
        if (std::find(hood.begin(), hood.end(), site) == hood.end())
            violations.push_back("eq3: item " + std::to_string(i) +
                                 " assigned outside its neighborhood");
        if (site >= static_cast<int>(inst.sites.size())) {
            violations.push_back("eq4: item " + std::to_string(i) + " assigned to unknown site");
            continue;
        }
        if (!sol.selected[static_cast<std::size_t>(site)])
            violations.push_back("eq4: item " + std::to_string(i) +
                                 " assigned to unselected site " + std::to_string(site));
        ++load[{site, static_cast<int>(item.type), item.bin}];
    }
    for (const auto& [key, count] : load) {
        const auto [site, type, bin] = key;
        const int n = sol.counts[static_cast<std::size_t>(site)][static_cast<std::size_t>(type)];
        if (count > n)
            violations.push_back("eq5: site " + std::to_string(site) + " type " +
                                 charger_type_name(static_cast<ChargerType>(type)) + " bin " +
                                 std::to_string(bin) + " load " + std::to_string(count) + " > " +
                                 std::to_string(n));
    }
    const double cost = solution_cost(inst, sol.selected, sol.counts);
    if (cost > inst.costs.budget_aud + kCostTol)
        violations.push_back("eq6: cost " + std::to_string(cost) + " exceeds budget " +
                             std::to_string(inst.costs.budget_aud));
    if (covered != sol.objective)
        violations.push_back("eq3: objective " + std::to_string(sol.objective) +
                             " does not match covered count " + std::to_string(covered));
    return violations;
}

Deployment to_deployment(const CmclpInstance& inst, const CmclpSolution& sol,
                         const NetworkGraph& net) {
    Deployment dep;
    for (std::size_t i = 0; i < inst.sites.size(); ++i) {
        if (!sol.selected[i]) continue;
        const auto& n = sol.counts[i];
        if (n[0] + n[1] + n[2] == 0) continue;
        const CandidateSite& site = inst.sites[i];
        int node = -1;
        double best = 1e300;
        for (const Node& nd : net.nodes()) {
            const double d = std::hypot(nd.x_km - site.x_km, nd.y_km - site.y_km);
            if (d < best) {
                best = d;
                node = nd.id;
            }
        }
        if (node < 0 || best > 1e-4)
            throw InputError("candidate site does not coincide with a network node");
        Station st;
        st.id = site.id;
        st.node = node;
        st.counts = n;
        dep.stations.push_back(st);
    }
    return dep;
}

}  // namespace evsim
