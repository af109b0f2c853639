#include "evsim/routing.hpp"

#include <limits>
#include <queue>
#include <tuple>

#include "evsim/errors.hpp"

namespace evsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const Router::SourceTable& Router::table(int source) const {
    auto it = cache_.find(source);
    if (it != cache_.end()) return it->second;

    const int n = net_->num_nodes();
    SourceTable t;
    t.dist_km.assign(static_cast<std::size_t>(n), kInf);
    t.time_s.assign(static_cast<std::size_t>(n), kInf);
    t.dist_km[static_cast<std::size_t>(source)] = 0.0;
    t.time_s[static_cast<std::size_t>(source)] = 0.0;

    using Entry = std::tuple<double, double, int>;  // dist, time, node
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    pq.emplace(0.0, 0.0, source);
    std::vector<char> done(static_cast<std::size_t>(n), 0);

    while (!pq.empty()) {
        auto [d, tm, u] = pq.top();
        pq.pop();
        if (done[static_cast<std::size_t>(u)]) continue;
        done[static_cast<std::size_t>(u)] = 1;
        for (int li : net_->out_links(u)) {
            const Link& l = net_->links()[static_cast<std::size_t>(li)];
            const double nd = d + l.length_km;
            const double nt = tm + l.length_km / l.speed_kmh * 3600.0;
            auto& bd = t.dist_km[static_cast<std::size_t>(l.to)];
            auto& bt = t.time_s[static_cast<std::size_t>(l.to)];
            if (nd < bd - 1e-12 || (nd < bd + 1e-12 && nt < bt)) {
                bd = nd;
                bt = nt;
                pq.emplace(nd, nt, l.to);
            }
        }
    }
    return cache_.emplace(source, std::move(t)).first->second;
}

double Router::distance_km(int from, int to) const {
    const double d = table(from).dist_km[static_cast<std::size_t>(to)];
    if (d == kInf) throw SimulationError("destination unreachable");
    return d;
}

double Router::travel_time_s(int from, int to) const {
    const double t = table(from).time_s[static_cast<std::size_t>(to)];
    if (t == kInf) throw SimulationError("destination unreachable");
    return t;
}

}  // namespace evsim
