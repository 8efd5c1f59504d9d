#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gamred/flow.hpp"
#include "gamred/instance.hpp"

namespace gamred {

// Residual network of a FlowState: a forward arc wherever f < k, a backward
// arc wherever f > 0. fractional marks edges with 0 < f < k.
struct ResidualArc {
    VertexId from;
    VertexId to;
    int edge;      // underlying edge id
    bool forward;  // false = traversal against the edge direction
    int capacity;  // k - f for forward, f for backward
};

struct ResidualView {
    std::vector<ResidualArc> arcs;
    std::vector<std::vector<int>> adjacency;  // vertex -> arc indices, ascending by (from, to)
    std::vector<bool> fractional;             // per edge
    int k = 1;
};

ResidualView make_residual(const GammoidInstance& inst, const FlowState& f);

// A residual cycle suitable for canceling: arc indices into view.arcs.
using ResidualCycle = std::vector<int>;

// Finds a simple directed residual cycle with more than two arcs, or nullopt.
// Only arcs whose underlying edge is strictly fractional are considered: a
// cycle through a 0- or k-flow edge cannot make progress toward acyclicity,
// and the forward/backward pair of a single edge is never returned. DFS
// explores arcs in ascending (from, to) order, so results are deterministic.
std::optional<ResidualCycle> find_augmenting_cycle(const ResidualView& view);

struct CancelStats {
    int iterations = 0;
};

// Cancels fractional residual cycles until none remain. Each iteration pushes
// the bottleneck capacity around one cycle and strictly increases the number
// of edges at flow 0 or k, so at most |E| iterations run (asserted). On
// return the four acyclic-flow properties hold: value and per-source emission
// preserved, every undirected cycle has a 0- or k-flow edge, strictly
// fractional edges form a forest, and k-flow edges form disjoint directed
// paths.
FlowState cancel_cycles(const GammoidInstance& inst, FlowState f, CancelStats* stats = nullptr);

enum class VertexRole : std::uint8_t { Source, SourcePortal, SinkPortal, Normal, Sink };

char role_letter(VertexRole role);

// Forest of strictly fractional edges plus the saturated-path structure.
//
// A tree vertex is a source portal if its unique in-edge in D carries k (a
// highway enters, supplying k to the tree), and a sink portal if its unique
// out-edge carries k (a highway leaves, draining exactly k). Sinks are always
// singleton components.
struct TreeDecomposition {
    struct Tree {
        std::vector<VertexId> vertices;  // ascending
        std::vector<int> edge_ids;       // fractional edges inside this tree
    };
    std::vector<Tree> trees;                     // components with at least one fractional edge
    std::vector<std::vector<VertexId>> highways; // maximal k-flow paths as vertex sequences
    std::vector<VertexRole> roles;               // per vertex of the instance
};

// Decomposes an acyclic flow (post cancel_cycles, post padding). Checks the
// structural invariants and throws InternalError on violation: fractional
// forest, vertex-disjoint highways, every sink a singleton receiving exactly
// k, and per tree #sources + k * #source_portals == k * #sink_portals.
TreeDecomposition decompose(const GammoidInstance& inst, const FlowState& f);

}  // namespace gamred
