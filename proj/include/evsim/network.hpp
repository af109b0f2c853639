#pragma once

#include <vector>

namespace evsim {

struct Node {
    int id = 0;
    double x_km = 0.0;
    double y_km = 0.0;
};

struct Link {
    int from = 0;
    int to = 0;
    double length_km = 0.0;
    double speed_kmh = 0.0;
};

// Directed road graph with planar node coordinates.
class NetworkGraph {
public:
    NetworkGraph() = default;

    int add_node(double x_km, double y_km);
    void add_link(int from, int to, double length_km, double speed_kmh);

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_links() const { return static_cast<int>(links_.size()); }
    const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Link>& links() const { return links_; }
    const std::vector<int>& out_links(int node) const {
        return out_[static_cast<std::size_t>(node)];
    }

    double euclid_km(int a, int b) const;

    bool strongly_connected() const;

    // Checks the structural invariants: unique coordinates, link lengths at
    // least the Euclidean gap, strong connectivity. Throws ConsistencyError.
    void validate() const;

    // Rectangular grid with bidirectional links of uniform length and speed.
    static NetworkGraph grid(int width, int height, double spacing_km, double speed_kmh);

private:
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::vector<std::vector<int>> out_;  // node -> indices into links_
};

}  // namespace evsim
