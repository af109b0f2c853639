#include "evsim/network.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "evsim/errors.hpp"

namespace evsim {

int NetworkGraph::add_node(double x_km, double y_km) {
    const int id = num_nodes();
    nodes_.push_back(Node{id, x_km, y_km});
    out_.emplace_back();
    return id;
}

void NetworkGraph::add_link(int from, int to, double length_km, double speed_kmh) {
    if (from < 0 || from >= num_nodes() || to < 0 || to >= num_nodes())
        throw ConsistencyError("link endpoint out of range");
    if (length_km < 0.0 || speed_kmh <= 0.0)
        throw ConsistencyError("link length/speed out of range");
    out_[static_cast<std::size_t>(from)].push_back(num_links());
    links_.push_back(Link{from, to, length_km, speed_kmh});
}

double NetworkGraph::euclid_km(int a, int b) const {
    const Node& na = node(a);
    const Node& nb = node(b);
    return std::hypot(na.x_km - nb.x_km, na.y_km - nb.y_km);
}

namespace {

int reachable_count(const NetworkGraph& net, bool reversed) {
    const int n = net.num_nodes();
    if (n == 0) return 0;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const Link& l : net.links()) {
        if (reversed)
            adj[static_cast<std::size_t>(l.to)].push_back(l.from);
        else
            adj[static_cast<std::size_t>(l.from)].push_back(l.to);
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count;
}

}  // namespace

bool NetworkGraph::strongly_connected() const {
    if (num_nodes() == 0) return false;
    return reachable_count(*this, false) == num_nodes() &&
           reachable_count(*this, true) == num_nodes();
}

void NetworkGraph::validate() const {
    std::map<std::pair<double, double>, int> coords;
    for (const Node& n : nodes_) {
        auto [it, inserted] = coords.emplace(std::make_pair(n.x_km, n.y_km), n.id);
        if (!inserted) throw ConsistencyError("duplicate node coordinates");
    }
    for (const Link& l : links_) {
        if (l.length_km + 1e-12 < euclid_km(l.from, l.to))
            throw ConsistencyError("link shorter than Euclidean distance");
    }
    if (!strongly_connected()) throw ConsistencyError("network not strongly connected");
}

NetworkGraph NetworkGraph::grid(int width, int height, double spacing_km, double speed_kmh) {
    if (width < 2 || height < 2) throw ConfigError("grid dimensions must be at least 2x2");
    if (spacing_km <= 0.0) throw ConfigError("grid spacing must be positive");
    if (speed_kmh <= 0.0) throw ConfigError("link speed must be positive");

    NetworkGraph net;
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
            net.add_node(c * spacing_km, r * spacing_km);

    auto id = [width](int r, int c) { return r * width + c; };
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            if (c + 1 < width) {
                net.add_link(id(r, c), id(r, c + 1), spacing_km, speed_kmh);
                net.add_link(id(r, c + 1), id(r, c), spacing_km, speed_kmh);
            }
            if (r + 1 < height) {
                net.add_link(id(r, c), id(r + 1, c), spacing_km, speed_kmh);
                net.add_link(id(r + 1, c), id(r, c), spacing_km, speed_kmh);
            }
        }
    }
    return net;
}

}  // namespace evsim
