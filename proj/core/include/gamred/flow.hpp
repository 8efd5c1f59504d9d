#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gamred/instance.hpp"

namespace gamred {

// Integral flow routing one unit from every source to the sinks under vertex
// and edge capacity k. edge_flow is parallel to inst.edges.
//
// Invariants: conservation at every non-source non-sink vertex, each source
// emits exactly 1, throughput of every vertex is at most k, and the support
// (edges with positive flow) contains no directed cycle.
struct FlowState {
    int k = 1;
    std::vector<int> edge_flow;

    int value(const GammoidInstance& inst) const;
};

// Flow of one unit per source under vertex capacity k, or nullopt when the
// sources cannot all route simultaneously. By matroid union, a feasible flow
// at capacity k exists iff the gammoid is k-colorable. The returned flow is
// circulation-free.
std::optional<FlowState> feasible_flow(const GammoidInstance& inst, int k);

// Smallest k such that feasible_flow(inst, k) succeeds, found by binary
// search on [ceil(|S|/rank), |S|]. Throws UncolorableSource if some source
// cannot reach any sink.
int coloring_number(const GammoidInstance& inst);

// Adds dummy sources until every sink absorbs exactly k units: each deficient
// sink's unique in-edge is subdivided with a fresh gadget vertex g, and each
// dummy attaches by a fresh two-edge path d -> x -> g. The returned flow
// extends f and stays feasible; rank of the padded instance equals its sink
// count. Sinks are processed by descending deficit, ties by ascending id.
std::pair<GammoidInstance, FlowState> pad_with_dummies(const GammoidInstance& inst, int k,
                                                       const FlowState& f);

// Per-vertex throughput (inflow plus source emission / sink absorption view):
// the number of flow units passing through v. Used by invariant checks.
std::vector<int> vertex_throughput(const GammoidInstance& inst, const FlowState& f);

// Validates conservation, capacities, and per-source emission; throws
// InternalError on violation. Cheap; used as a post-condition check.
void check_flow_feasible(const GammoidInstance& inst, const FlowState& f);

}  // namespace gamred
