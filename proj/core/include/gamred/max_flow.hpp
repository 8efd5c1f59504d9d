#pragma once

#include <vector>

namespace gamred {

// Integral max flow via Dinic's algorithm. Arcs are stored in pairs: the
// reverse of arc i is arc i^1, so residual updates are index flips.
class MaxFlowNetwork {
  public:
    explicit MaxFlowNetwork(int node_count) : adj_(node_count) {}

    int node_count() const { return static_cast<int>(adj_.size()); }

    int add_node() {
        adj_.emplace_back();
        return node_count() - 1;
    }

    // Adds a directed arc with the given capacity; returns its id.
    int add_arc(int from, int to, int capacity);

    // Runs Dinic from source to sink on the current residual capacities and
    // returns the flow pushed by this call.
    long long max_flow(int source, int sink);

    // Flow currently on arc id (capacity minus residual).
    int flow_on(int arc_id) const { return arcs_[arc_id ^ 1].residual; }

    int capacity_of(int arc_id) const { return arcs_[arc_id].capacity; }

  private:
    struct Arc {
        int to;
        int residual;
        int capacity;
    };

    bool build_levels(int source, int sink);
    int push(int v, int sink, int limit);

    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> level_;
    std::vector<int> next_arc_;
};

}  // namespace gamred
