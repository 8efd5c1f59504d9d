#pragma once

#include <string>

#include <json.hpp>

#include "gamred/coloring.hpp"
#include "gamred/reduce.hpp"
#include "gamred/verify.hpp"

namespace gamred {

using Json = nlohmann::ordered_json;

// JSON views of the result types. Vertex ids are 1-based externally, matching
// the instance file format.

Json reduction_report(const PartitionReduction& pr);
PartitionReduction reduction_from_report(const Json& doc);

Json verification_report(const VerificationReport& report);

Json coloring_report(const IntersectionColoring& coloring);

// Dump formats for --emit-flow ("f <u> <v> <value>") and --emit-trees
// (per-tree role-tagged vertex lists plus highway vertex sequences).
std::string flow_dump(const GammoidInstance& inst, const FlowState& f);
std::string tree_dump(const TreeDecomposition& dec);

}  // namespace gamred
