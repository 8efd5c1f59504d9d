#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "gamred/decompose.hpp"
#include "gamred/instance.hpp"

namespace gamred {

// Mutable state of one tree during the recursive partitioning. Vertices keep
// their instance ids; virtual sink portals created by case 3b get fresh ids
// and never appear in emitted parts.
//
// Invariants: connected; sink portals have out-degree 0 and are never given
// outgoing edges; sources have in-degree 0 and out-degree at most 1; a
// feasible tree flow exists (sources supply 1, source portals supply k, sink
// portals absorb at most k, throughput at most k everywhere).
struct TreeState {
    int k = 1;
    std::map<VertexId, VertexRole> roles;
    std::map<VertexId, std::set<VertexId>> out;
    std::map<VertexId, std::set<VertexId>> in;
    VertexId next_fresh_id = 0;
    std::set<VertexId> virtual_vertices;

    bool contains(VertexId v) const { return roles.count(v) > 0; }
    void add_vertex(VertexId v, VertexRole role);
    void add_edge(VertexId a, VertexId b);
    void remove_vertex(VertexId v);
    // Strips v's incident edges but keeps the vertex.
    void detach(VertexId v);

    std::vector<VertexId> vertices() const;
    std::vector<VertexId> source_list() const;
    std::vector<VertexId> neighbors(VertexId v) const;  // undirected, ascending
    int count_role(VertexRole role) const;
    int vertex_count() const { return static_cast<int>(roles.size()); }
};

// Builds the recursion state for one tree of the decomposition.
TreeState tree_state_from(const GammoidInstance& inst, const TreeDecomposition& dec,
                          int tree_index);

// Backbone of a tree: the union of all paths between pairs of sink portals,
// plus the derived branching-vertex and hanging-source structure.
struct BackboneView {
    std::set<VertexId> vertices;
    std::set<std::pair<VertexId, VertexId>> edges;  // directed as in the tree
    std::vector<VertexId> branching;                // ascending
    // backbone vertex -> sources in hanging trees whose contact it is
    std::map<VertexId, std::vector<VertexId>> hanging_sources;
    int sink_portal_count = 0;

    int out_degree(VertexId v) const;
    bool on_backbone(VertexId v) const { return vertices.count(v) > 0; }
};

// Computes the backbone. Asserts that no source lies on it and that every
// source portal lies on it with backbone out-degree >= 2 (when two or more
// sink portals exist).
BackboneView backbone(const TreeState& t);

// True iff every hanging-tree edge points toward its backbone contact vertex.
// Holds for every freshly decomposed tree.
bool hanging_edges_point_to_backbone(const TreeState& t, const BackboneView& b);

enum class CaseTag { BaseA, BaseB, Case1a, Case1b, Case2a, Case2b, Case2c, Case3a, Case3b };

const char* case_name(CaseTag tag);

// Everything apply needs: the chosen branching vertex, subtree, path vertex
// and the sources the step emits.
struct CaseSelection {
    CaseTag tag = CaseTag::BaseA;
    VertexId v = -1;  // branching vertex
    int i = 0;        // 1 or 2, which subtree the case acts on
    VertexId y = -1;  // out-degree-2 path vertex (cases 2a-2c)
    VertexId z1 = -1;
    VertexId z2 = -1;                      // == v when v is a sink portal
    std::vector<VertexId> part;            // sources emitted (may be empty)
    std::vector<VertexId> t1_vertices;     // component of T - v holding z1
    std::vector<VertexId> t2_vertices;     // empty when z2 == v
};

// Picks the first applicable case in the fixed order BaseA, BaseB, 1a, 1b,
// 2a, 2b, 2c, 3a, 3b, with deterministic tie-breaks: smallest-id branching
// vertex, subtrees ordered by sink-portal id, i = 1 tried before i = 2.
// Throws InternalError when no case applies (unreachable for valid states).
CaseSelection resolve_case(const TreeState& t, const BackboneView& b);

CaseTag select_case(const TreeState& t, const BackboneView& b);

struct ApplyResult {
    bool done = false;               // a base case ended this tree
    std::vector<VertexId> part;      // emitted sources, empty if none
};

// Performs the mutation for the given case tag (which must equal
// select_case(t, b)) and returns the emitted part, if any.
ApplyResult apply_case(TreeState& t, CaseTag tag, const BackboneView& b);

// True iff the tree admits a feasible flow: each source supplies 1, each
// source portal supplies k, sink portals absorb at most k, and no vertex or
// edge carries more than k. Decided by max flow on the node-split tree.
bool check_tree_flow(const TreeState& t);

struct ReduceTreeOptions {
    // Re-check the feasible-flow invariant after every recursive step.
    bool check_flow_each_step = true;
};

struct ReduceTreeResult {
    std::vector<std::vector<VertexId>> parts;
    std::map<CaseTag, int> case_counts;
    int steps = 0;
};

// Runs the recursion on one tree until a base case fires. Every source of
// the input tree ends up in exactly one part; parts never exceed 2k-2
// sources.
ReduceTreeResult reduce_tree(TreeState t, const ReduceTreeOptions& opts = {});

}  // namespace gamred
