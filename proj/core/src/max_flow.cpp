#include "gamred/max_flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace gamred {

int MaxFlowNetwork::add_arc(int from, int to, int capacity) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, capacity, capacity});
    adj_[from].push_back(id);
    arcs_.push_back({from, 0, 0});
    adj_[to].push_back(id + 1);
    return id;
}

bool MaxFlowNetwork::build_levels(int source, int sink) {
    level_.assign(node_count(), -1);
    level_[source] = 0;
    std::deque<int> queue{source};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int id : adj_[v]) {
            const Arc& a = arcs_[id];
            if (a.residual > 0 && level_[a.to] < 0) {
                level_[a.to] = level_[v] + 1;
                queue.push_back(a.to);
            }
        }
    }
    return level_[sink] >= 0;
}

int MaxFlowNetwork::push(int v, int sink, int limit) {
    if (v == sink || limit == 0) return limit;
    for (int& i = next_arc_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
        int id = adj_[v][i];
        Arc& a = arcs_[id];
        if (a.residual <= 0 || level_[a.to] != level_[v] + 1) continue;
        int pushed = push(a.to, sink, std::min(limit, a.residual));
        if (pushed > 0) {
            a.residual -= pushed;
            arcs_[id ^ 1].residual += pushed;
            return pushed;
        }
    }
    return 0;
}

long long MaxFlowNetwork::max_flow(int source, int sink) {
    long long total = 0;
    while (build_levels(source, sink)) {
        next_arc_.assign(node_count(), 0);
        while (int pushed = push(source, sink, std::numeric_limits<int>::max())) total += pushed;
    }
    return total;
}

}  // namespace gamred
