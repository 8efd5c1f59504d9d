#include "gamred/decompose.hpp"

#include <algorithm>
#include <numeric>

#include "gamred/errors.hpp"

namespace gamred {

char role_letter(VertexRole role) {
    switch (role) {
        case VertexRole::Source: return 'S';
        case VertexRole::SourcePortal: return 'P';
        case VertexRole::SinkPortal: return 'Q';
        case VertexRole::Normal: return 'N';
        case VertexRole::Sink: return 'Z';
    }
    return '?';
}

ResidualView make_residual(const GammoidInstance& inst, const FlowState& f) {
    ResidualView view;
    view.k = f.k;
    view.fractional.resize(inst.edges.size());
    for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e) {
        const auto& [u, v] = inst.edges[e];
        int fv = f.edge_flow[e];
        view.fractional[e] = fv > 0 && fv < f.k;
        if (fv < f.k) view.arcs.push_back({u, v, e, true, f.k - fv});
        if (fv > 0) view.arcs.push_back({v, u, e, false, fv});
    }
    view.adjacency.assign(inst.n, {});
    std::vector<int> order(view.arcs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& A = view.arcs[a];
        const auto& B = view.arcs[b];
        return std::tie(A.from, A.to, A.edge) < std::tie(B.from, B.to, B.edge);
    });
    for (int id : order) view.adjacency[view.arcs[id].from].push_back(id);
    return view;
}

std::optional<ResidualCycle> find_augmenting_cycle(const ResidualView& view) {
    const int n = static_cast<int>(view.adjacency.size());
    std::vector<int> state(n, 0);  // 0 white, 1 on stack, 2 done
    std::vector<int> via_arc(n, -1);

    for (VertexId root = 0; root < n; ++root) {
        if (state[root] != 0) continue;
        std::vector<std::pair<VertexId, size_t>> stack{{root, 0}};
        state[root] = 1;
        while (!stack.empty()) {
            auto& [v, idx] = stack.back();
            if (idx == view.adjacency[v].size()) {
                state[v] = 2;
                stack.pop_back();
                continue;
            }
            int arc_id = view.adjacency[v][idx++];
            const ResidualArc& arc = view.arcs[arc_id];
            if (!view.fractional[arc.edge]) continue;
            // Never take the immediate reverse of the arc that reached v.
            if (via_arc[v] >= 0) {
                const ResidualArc& in = view.arcs[via_arc[v]];
                if (in.edge == arc.edge && in.forward != arc.forward) continue;
            }
            VertexId to = arc.to;
            if (state[to] == 0) {
                state[to] = 1;
                via_arc[to] = arc_id;
                stack.emplace_back(to, 0);
            } else if (state[to] == 1) {
                ResidualCycle cycle{arc_id};
                for (VertexId w = v; w != to; w = view.arcs[via_arc[w]].from)
                    cycle.push_back(via_arc[w]);
                std::reverse(cycle.begin(), cycle.end());
                if (cycle.size() <= 2)
                    throw InternalError("residual cycle of length <= 2; instance not normalized?");
                return cycle;
            }
        }
    }
    return std::nullopt;
}

namespace {

int count_0_or_k(const FlowState& f) {
    int count = 0;
    for (int fv : f.edge_flow) count += (fv == 0 || fv == f.k);
    return count;
}

}  // namespace

FlowState cancel_cycles(const GammoidInstance& inst, FlowState f, CancelStats* stats) {
    check_flow_feasible(inst, f);
    const int edge_count = static_cast<int>(inst.edges.size());
    int iterations = 0;
    while (true) {
        ResidualView view = make_residual(inst, f);
        auto cycle = find_augmenting_cycle(view);
        if (!cycle) break;
        if (++iterations > edge_count)
            throw InternalError("cycle canceling exceeded |E| iterations");
        int before = count_0_or_k(f);
        int bottleneck = view.arcs[(*cycle)[0]].capacity;
        for (int arc_id : *cycle) bottleneck = std::min(bottleneck, view.arcs[arc_id].capacity);
        for (int arc_id : *cycle) {
            const ResidualArc& arc = view.arcs[arc_id];
            f.edge_flow[arc.edge] += arc.forward ? bottleneck : -bottleneck;
        }
        if (count_0_or_k(f) <= before)
            throw InternalError("cycle canceling made no progress");
    }
    if (stats) stats->iterations = iterations;

    check_flow_feasible(inst, f);
    // Forest check on the fractional support via union-find.
    std::vector<int> parent(inst.n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](VertexId v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (int e = 0; e < edge_count; ++e) {
        if (f.edge_flow[e] == 0 || f.edge_flow[e] == f.k) continue;
        int a = find(inst.edges[e].first), b = find(inst.edges[e].second);
        if (a == b) throw InternalError("fractional edges contain an undirected cycle");
        parent[a] = b;
    }
    return f;
}

TreeDecomposition decompose(const GammoidInstance& inst, const FlowState& f) {
    const int n = inst.n;
    const int k = f.k;
    TreeDecomposition dec;

    auto saturated = [&](int e) { return f.edge_flow[e] == k; };
    auto fractional = [&](int e) { return f.edge_flow[e] > 0 && f.edge_flow[e] < k; };

    // Roles. Portals need at least one incident fractional edge (tree
    // membership); pass-through highway vertices stay normal.
    dec.roles.assign(n, VertexRole::Normal);
    std::vector<bool> in_tree(n, false);
    for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e) {
        if (fractional(e)) {
            in_tree[inst.edges[e].first] = true;
            in_tree[inst.edges[e].second] = true;
        }
    }
    for (VertexId v = 0; v < n; ++v) {
        if (inst.is_source(v)) {
            dec.roles[v] = VertexRole::Source;
        } else if (inst.is_sink(v)) {
            dec.roles[v] = VertexRole::Sink;
            if (in_tree[v]) throw InternalError("sink attached to a fractional edge");
            if (f.edge_flow[inst.in_edges[v][0]] != k)
                throw InternalError("sink does not receive exactly k");
        } else if (in_tree[v]) {
            bool highway_in = inst.in_degree(v) == 1 && saturated(inst.in_edges[v][0]);
            bool highway_out = inst.out_degree(v) == 1 && saturated(inst.out_edges[v][0]);
            if (highway_in && highway_out)
                throw InternalError("tree vertex with saturated in and out edge");
            if (highway_in)
                dec.roles[v] = VertexRole::SourcePortal;
            else if (highway_out)
                dec.roles[v] = VertexRole::SinkPortal;
        }
    }

    // Trees: connected components of fractional edges.
    std::vector<int> component(n, -1);
    for (VertexId v = 0; v < n; ++v) {
        if (!in_tree[v] || component[v] >= 0) continue;
        int id = static_cast<int>(dec.trees.size());
        dec.trees.emplace_back();
        std::vector<VertexId> stack{v};
        component[v] = id;
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            dec.trees[id].vertices.push_back(u);
            auto visit = [&](int e, VertexId other) {
                if (!fractional(e)) return;
                if (component[other] < 0) {
                    component[other] = id;
                    stack.push_back(other);
                }
            };
            for (int e : inst.out_edges[u]) visit(e, inst.edges[e].second);
            for (int e : inst.in_edges[u]) visit(e, inst.edges[e].first);
        }
        std::sort(dec.trees[id].vertices.begin(), dec.trees[id].vertices.end());
    }
    for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e) {
        if (fractional(e)) dec.trees[component[inst.edges[e].first]].edge_ids.push_back(e);
    }

    // Per-tree balance: sources + k * source_portals == k * sink_portals.
    for (const auto& tree : dec.trees) {
        if (tree.edge_ids.size() + 1 != tree.vertices.size())
            throw InternalError("fractional component is not a tree; flow not acyclic?");
        int sources = 0, source_portals = 0, sink_portals = 0;
        for (VertexId v : tree.vertices) {
            switch (dec.roles[v]) {
                case VertexRole::Source: ++sources; break;
                case VertexRole::SourcePortal: ++source_portals; break;
                case VertexRole::SinkPortal: ++sink_portals; break;
                default: break;
            }
        }
        if (sources + k * source_portals != k * sink_portals)
            throw InternalError("tree supply/drain imbalance: " + std::to_string(sources) + " + " +
                                std::to_string(k) + "*" + std::to_string(source_portals) +
                                " != " + std::to_string(k) + "*" + std::to_string(sink_portals));
    }

    // Highways: maximal chains of saturated edges. Every vertex carries at
    // most one saturated in-edge and one saturated out-edge.
    std::vector<int> sat_out(n, -1), sat_in(n, -1);
    int saturated_count = 0;
    for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e) {
        if (!saturated(e)) continue;
        ++saturated_count;
        const auto& [u, v] = inst.edges[e];
        if (sat_out[u] >= 0 || sat_in[v] >= 0)
            throw InternalError("saturated edges do not form disjoint paths");
        sat_out[u] = e;
        sat_in[v] = e;
    }
    int consumed = 0;
    for (VertexId v = 0; v < n; ++v) {
        if (sat_out[v] < 0 || sat_in[v] >= 0) continue;  // chain starts here
        std::vector<VertexId> path{v};
        VertexId cur = v;
        while (sat_out[cur] >= 0) {
            ++consumed;
            cur = inst.edges[sat_out[cur]].second;
            path.push_back(cur);
            if (static_cast<int>(path.size()) > n + 1)
                throw InternalError("saturated edges contain a directed cycle");
        }
        dec.highways.push_back(std::move(path));
    }
    if (consumed != saturated_count)
        throw InternalError("saturated edges contain a directed cycle");

    return dec;
}

}  // namespace gamred
