#include "gamred/independence.hpp"

#include <algorithm>
#include <deque>

#include "gamred/errors.hpp"
#include "gamred/max_flow.hpp"

namespace gamred {

namespace {

// Node-split network: vertex v becomes arc in(v) -> out(v) of capacity 1,
// so a unit of flow equals a vertex-disjoint path.
struct UnitSplitNetwork {
    explicit UnitSplitNetwork(const GammoidInstance& inst)
        : net(2 * inst.n + 2), source(2 * inst.n), sink(2 * inst.n + 1) {
        for (VertexId v = 0; v < inst.n; ++v) net.add_arc(in(v), out(v), 1);
        for (const auto& [u, v] : inst.edges) net.add_arc(out(u), in(v), 1);
        for (VertexId z : inst.sinks) net.add_arc(out(z), sink, 1);
    }
    static int in(VertexId v) { return 2 * v; }
    static int out(VertexId v) { return 2 * v + 1; }

    MaxFlowNetwork net;
    int source;
    int sink;
};

}  // namespace

bool is_independent(const GammoidInstance& inst, const SourceSet& Y) {
    if (Y.empty()) return true;
    SourceSet members = Y;
    std::sort(members.begin(), members.end());
    for (size_t i = 0; i < members.size(); ++i) {
        if (members[i] < 0 || members[i] >= inst.n || !inst.is_source(members[i]))
            throw InvalidInstance("is_independent: " + std::to_string(members[i] + 1) +
                                  " is not a source");
        if (i > 0 && members[i] == members[i - 1])
            throw InvalidInstance("is_independent: duplicate source");
    }
    UnitSplitNetwork split(inst);
    for (VertexId y : members) split.net.add_arc(split.source, UnitSplitNetwork::in(y), 1);
    return split.net.max_flow(split.source, split.sink) == static_cast<long long>(members.size());
}

int rank(const GammoidInstance& inst) {
    UnitSplitNetwork split(inst);
    for (VertexId s : inst.sources) split.net.add_arc(split.source, UnitSplitNetwork::in(s), 1);
    return static_cast<int>(split.net.max_flow(split.source, split.sink));
}

std::vector<VertexId> unroutable_sources(const GammoidInstance& inst) {
    // Reverse BFS from all sinks.
    std::vector<bool> reaches(inst.n, false);
    std::deque<VertexId> queue;
    for (VertexId z : inst.sinks) {
        reaches[z] = true;
        queue.push_back(z);
    }
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (int e : inst.in_edges[v]) {
            VertexId u = inst.edges[e].first;
            if (!reaches[u]) {
                reaches[u] = true;
                queue.push_back(u);
            }
        }
    }
    std::vector<VertexId> bad;
    for (VertexId s : inst.sources) {
        if (!reaches[s]) bad.push_back(s);
    }
    return bad;
}

}  // namespace gamred
