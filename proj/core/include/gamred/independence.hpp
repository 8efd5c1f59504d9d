#pragma once

#include <vector>

#include "gamred/instance.hpp"

namespace gamred {

// A subset of an instance's sources, sorted ascending.
using SourceSet = std::vector<VertexId>;

// True iff |Y| vertex-disjoint directed paths from Y to distinct sinks exist.
// Decided by integral max flow with every vertex capacity 1 (node splitting);
// works on any instance, normalized or not. The empty set is independent.
bool is_independent(const GammoidInstance& inst, const SourceSet& Y);

// Rank of the gammoid: the maximum number of vertex-disjoint source-to-sink
// paths, i.e. the size of a largest independent set.
int rank(const GammoidInstance& inst);

// Sources with no directed path to any sink, ascending. Nonempty result means
// no feasible flow can route every source at any capacity.
std::vector<VertexId> unroutable_sources(const GammoidInstance& inst);

}  // namespace gamred
