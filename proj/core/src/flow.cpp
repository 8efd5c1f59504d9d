#include "gamred/flow.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "gamred/errors.hpp"
#include "gamred/independence.hpp"
#include "gamred/max_flow.hpp"

namespace gamred {

int FlowState::value(const GammoidInstance& inst) const {
    int total = 0;
    for (VertexId s : inst.sources) {
        for (int e : inst.out_edges[s]) total += edge_flow[e];
    }
    return total;
}

std::vector<int> vertex_throughput(const GammoidInstance& inst, const FlowState& f) {
    std::vector<int> inflow(inst.n, 0), outflow(inst.n, 0);
    for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e) {
        outflow[inst.edges[e].first] += f.edge_flow[e];
        inflow[inst.edges[e].second] += f.edge_flow[e];
    }
    std::vector<int> through(inst.n);
    for (VertexId v = 0; v < inst.n; ++v) through[v] = std::max(inflow[v], outflow[v]);
    return through;
}

void check_flow_feasible(const GammoidInstance& inst, const FlowState& f) {
    if (f.edge_flow.size() != inst.edges.size())
        throw InternalError("flow/edge size mismatch");
    std::vector<int> inflow(inst.n, 0), outflow(inst.n, 0);
    for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e) {
        int fv = f.edge_flow[e];
        if (fv < 0 || fv > f.k) throw InternalError("edge flow outside [0, k]");
        outflow[inst.edges[e].first] += fv;
        inflow[inst.edges[e].second] += fv;
    }
    for (VertexId v = 0; v < inst.n; ++v) {
        if (inst.is_source(v)) {
            if (inflow[v] != 0 || outflow[v] != 1)
                throw InternalError("source " + std::to_string(v + 1) + " does not emit exactly 1");
        } else if (inst.is_sink(v)) {
            if (outflow[v] != 0 || inflow[v] > f.k)
                throw InternalError("sink " + std::to_string(v + 1) + " violates absorption");
        } else {
            if (inflow[v] != outflow[v])
                throw InternalError("conservation fails at vertex " + std::to_string(v + 1));
            if (inflow[v] > f.k)
                throw InternalError("throughput above k at vertex " + std::to_string(v + 1));
        }
    }
}

namespace {

// Zeroes out directed cycles in the support so the flow decomposes into
// source-to-sink paths only. Each round deletes at least one support edge.
void remove_circulations(const GammoidInstance& inst, FlowState& f) {
    while (true) {
        // Iterative DFS over support edges; gray-vertex hit = directed cycle.
        std::vector<int> state(inst.n, 0);  // 0 white, 1 gray, 2 black
        std::vector<int> via_edge(inst.n, -1);
        std::vector<int> cycle;
        for (VertexId root = 0; root < inst.n && cycle.empty(); ++root) {
            if (state[root] != 0) continue;
            std::vector<std::pair<VertexId, size_t>> stack{{root, 0}};
            state[root] = 1;
            while (!stack.empty() && cycle.empty()) {
                auto& [v, idx] = stack.back();
                if (idx == inst.out_edges[v].size()) {
                    state[v] = 2;
                    stack.pop_back();
                    continue;
                }
                int e = inst.out_edges[v][idx++];
                if (f.edge_flow[e] == 0) continue;
                VertexId to = inst.edges[e].second;
                if (state[to] == 0) {
                    state[to] = 1;
                    via_edge[to] = e;
                    stack.emplace_back(to, 0);
                } else if (state[to] == 1) {
                    // Walk back from v to 'to' collecting the cycle edges.
                    cycle.push_back(e);
                    for (VertexId w = v; w != to; w = inst.edges[via_edge[w]].first)
                        cycle.push_back(via_edge[w]);
                }
            }
        }
        if (cycle.empty()) return;
        int c = f.edge_flow[cycle[0]];
        for (int e : cycle) c = std::min(c, f.edge_flow[e]);
        for (int e : cycle) f.edge_flow[e] -= c;
    }
}

}  // namespace

std::optional<FlowState> feasible_flow(const GammoidInstance& inst, int k) {
    if (k < 1) throw InvalidInstance("feasible_flow requires k >= 1");
    // Node-split network with vertex and edge capacity k; one unit per source.
    const int n = inst.n;
    MaxFlowNetwork net(2 * n + 2);
    const int super_source = 2 * n, super_sink = 2 * n + 1;
    auto in = [](VertexId v) { return 2 * v; };
    auto out = [](VertexId v) { return 2 * v + 1; };
    for (VertexId v = 0; v < n; ++v) net.add_arc(in(v), out(v), k);
    std::vector<int> edge_arc(inst.edges.size());
    for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e)
        edge_arc[e] = net.add_arc(out(inst.edges[e].first), in(inst.edges[e].second), k);
    for (VertexId s : inst.sources) net.add_arc(super_source, in(s), 1);
    for (VertexId z : inst.sinks) net.add_arc(out(z), super_sink, k);

    long long value = net.max_flow(super_source, super_sink);
    if (value != static_cast<long long>(inst.sources.size())) return std::nullopt;

    FlowState f;
    f.k = k;
    f.edge_flow.resize(inst.edges.size());
    for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e)
        f.edge_flow[e] = net.flow_on(edge_arc[e]);
    remove_circulations(inst, f);
    check_flow_feasible(inst, f);
    return f;
}

int coloring_number(const GammoidInstance& inst) {
    auto bad = unroutable_sources(inst);
    if (!bad.empty())
        throw UncolorableSource(bad[0], "source " + std::to_string(bad[0] + 1) +
                                            " has no path to any sink");
    const int s_count = static_cast<int>(inst.sources.size());
    if (s_count == 0) return 1;
    int r = rank(inst);
    int lo = std::max(1, (s_count + r - 1) / r);
    int hi = s_count;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (feasible_flow(inst, mid).has_value())
            hi = mid;
        else
            lo = mid + 1;
    }
    if (!feasible_flow(inst, lo).has_value())
        throw InternalError("coloring_number: upper bound infeasible");
    return lo;
}

std::pair<GammoidInstance, FlowState> pad_with_dummies(const GammoidInstance& inst, int k,
                                                       const FlowState& f) {
    check_flow_feasible(inst, f);
    if (f.k != k) throw InvalidInstance("pad_with_dummies: flow was built for a different k");

    // Inflow of each sink travels over its unique in-edge.
    std::vector<std::pair<VertexId, int>> deficits;  // (sink, deficit)
    std::map<Edge, int> flow_by_edge;
    for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e)
        flow_by_edge[inst.edges[e]] = f.edge_flow[e];
    for (VertexId z : inst.sinks) {
        if (inst.in_degree(z) != 1)
            throw InvalidInstance("pad_with_dummies wants normalized sinks (in-degree 1)");
        int inflow = f.edge_flow[inst.in_edges[z][0]];
        if (inflow < k) deficits.emplace_back(z, k - inflow);
    }
    if (deficits.empty()) return {inst, f};

    std::sort(deficits.begin(), deficits.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    int next_id = inst.n;
    std::vector<VertexId> new_sources;
    for (const auto& [z, deficit] : deficits) {
        Edge in_edge = inst.edges[inst.in_edges[z][0]];
        int carried = flow_by_edge.at(in_edge);
        VertexId g = next_id++;
        flow_by_edge.erase(in_edge);
        flow_by_edge[{in_edge.first, g}] = carried;
        flow_by_edge[{g, z}] = k;
        for (int j = 0; j < deficit; ++j) {
            VertexId d = next_id++;
            VertexId x = next_id++;
            flow_by_edge[{d, x}] = 1;
            flow_by_edge[{x, g}] = 1;
            new_sources.push_back(d);
        }
    }

    GammoidInstance padded;
    padded.n = next_id;
    padded.sources = inst.sources;
    padded.dummy_flags.assign(inst.sources.size(), false);
    for (size_t i = 0; i < inst.sources.size(); ++i) padded.dummy_flags[i] = inst.dummy_flags[i];
    for (VertexId d : new_sources) {
        padded.sources.push_back(d);
        padded.dummy_flags.push_back(true);
    }
    padded.sinks = inst.sinks;
    FlowState padded_flow;
    padded_flow.k = k;
    for (const auto& [edge, fv] : flow_by_edge) {
        padded.edges.push_back(edge);
        padded_flow.edge_flow.push_back(fv);
    }
    padded.finalize();

    check_flow_feasible(padded, padded_flow);
    for (VertexId z : padded.sinks) {
        if (padded_flow.edge_flow[padded.in_edges[z][0]] != k)
            throw InternalError("padding left sink " + std::to_string(z + 1) + " unsaturated");
    }
    if (!is_normalized(padded)) throw InternalError("padding broke normalization");
    if (rank(padded) != static_cast<int>(padded.sinks.size()))
        throw InternalError("padded rank differs from sink count");
    return {std::move(padded), std::move(padded_flow)};
}

}  // namespace gamred
