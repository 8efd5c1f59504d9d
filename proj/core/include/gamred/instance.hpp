#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gamred {

// Vertices are dense 0-based ints internally; instance files use 1-based ids.
using VertexId = int;

using Edge = std::pair<VertexId, VertexId>;

// A gammoid given by its graphical representation: a digraph with marked
// sources and sinks. A source set is independent iff it admits vertex-disjoint
// directed paths to distinct sinks.
//
// Invariants (enforced by parse_instance / normalize):
//   - sources and sinks are disjoint, sorted, in range
//   - edges are unique, sorted, no self-loops
//   - after normalize(): every vertex has in-degree <= 1 or out-degree <= 1,
//     sources have degrees (0,1), sinks have degrees (1,0), and no
//     antiparallel edge pair remains
struct GammoidInstance {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<VertexId> sources;
    std::vector<VertexId> sinks;
    // Parallel to sources; true for padding sources added by pad_with_dummies.
    std::vector<bool> dummy_flags;

    // Derived adjacency, rebuilt by finalize(). out_edges[v] / in_edges[v]
    // hold indices into edges.
    std::vector<std::vector<int>> out_edges;
    std::vector<std::vector<int>> in_edges;
    std::vector<bool> source_mark;
    std::vector<bool> sink_mark;

    // Sorts/dedups edge and terminal lists and rebuilds adjacency.
    void finalize();

    int out_degree(VertexId v) const { return static_cast<int>(out_edges[v].size()); }
    int in_degree(VertexId v) const { return static_cast<int>(in_edges[v].size()); }
    bool is_source(VertexId v) const { return source_mark[v]; }
    bool is_sink(VertexId v) const { return sink_mark[v]; }

    bool operator==(const GammoidInstance& other) const {
        return n == other.n && edges == other.edges && sources == other.sources &&
               sinks == other.sinks && dummy_flags == other.dummy_flags;
    }
};

// Records how normalize() rewrote vertices. forward[v] lists v itself plus
// any helper vertices created on v's behalf; backward[w] is the original
// vertex each normalized vertex stands for.
struct VertexMap {
    std::vector<std::vector<VertexId>> forward;
    std::vector<VertexId> backward;

    bool is_identity() const;
};

// Parses the text instance format:
//   p gammoid <n> <m>
//   a <u> <v>        (m arc lines; duplicates collapse to one edge)
//   s <v>            (source)
//   t <v>            (sink)
//   # comment
// Throws ParseError with a 1-based line number on malformed input,
// out-of-range ids, or a vertex declared both source and sink.
GammoidInstance parse_instance(const std::string& text);

// Canonical text form: header, then sorted arc/source/sink lines.
// parse_instance(serialize_instance(x)) reproduces x exactly.
std::string serialize_instance(const GammoidInstance& inst);

// Rewrites the instance so the standard degree assumptions hold:
//   1. one edge of every antiparallel pair is subdivided
//   2. every source gets a private successor if its degrees are not (0,1)
//   3. every sink gets a private predecessor if its degrees are not (1,0)
//   4. any vertex with in-degree >= 2 and out-degree >= 2 is split
// Fresh vertices get ids n, n+1, ... in a fixed processing order, so the
// output is reproducible. Independence of every source set is preserved,
// and source/sink ids are unchanged. Throws InvalidInstance if sources or
// sinks are empty.
std::pair<GammoidInstance, VertexMap> normalize(const GammoidInstance& inst);

// True iff the four normalization assumptions hold already.
bool is_normalized(const GammoidInstance& inst);

}  // namespace gamred
