#pragma once

#include <unordered_map>
#include <vector>

#include "evsim/network.hpp"

namespace evsim {

// Shortest-path engine over an immutable network. Paths minimize distance;
// travel time is accumulated along the distance-optimal path (ties broken
// toward smaller time, then smaller predecessor id, so results are
// deterministic). Per-source tables are cached lazily; a Router instance is
// owned by one simulation run and is not shared between threads.
class Router {
public:
    explicit Router(const NetworkGraph& net) : net_(&net) {}

    double distance_km(int from, int to) const;
    double travel_time_s(int from, int to) const;

    const NetworkGraph& network() const { return *net_; }

private:
    struct SourceTable {
        std::vector<double> dist_km;
        std::vector<double> time_s;
    };

    const SourceTable& table(int source) const;

    const NetworkGraph* net_;
    mutable std::unordered_map<int, SourceTable> cache_;
};

}  // namespace evsim
