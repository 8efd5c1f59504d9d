#pragma once

#include <map>
#include <string>
#include <vector>

#include "gamred/decompose.hpp"
#include "gamred/flow.hpp"
#include "gamred/instance.hpp"

namespace gamred {

// Result of reducing a gammoid to a partition matroid: a partition of the
// sources (real and padding dummies) into parts of size at most max(1, 2k-2)
// such that every one-per-part transversal is independent in the gammoid.
struct PartitionReduction {
    int k = 1;
    int bound = 1;  // max(1, 2k - 2)
    std::vector<std::vector<VertexId>> parts;
    std::vector<VertexId> dummy_sources;
    struct Stats {
        std::map<std::string, int> case_counts;
        int max_part_size = 0;
        int trees = 0;
        int highways = 0;
        int cancel_iterations = 0;
    } stats;
};

struct ReduceOptions {
    // Verify the per-tree feasible-flow invariant after every recursive step.
    bool check_tree_flow_each_step = true;
};

// Full pipeline on a normalized instance: coloring number, feasible flow,
// dummy padding, cycle canceling, tree decomposition, per-tree reduction.
// k = 1 yields singleton parts directly (the trees carry no sources then).
// Throws UncolorableSource if some source cannot reach any sink.
PartitionReduction partition_reduction(const GammoidInstance& inst,
                                       const ReduceOptions& opts = {});

// Same pipeline, keeping the intermediate artifacts for dumps and tests.
struct ReductionRun {
    GammoidInstance padded;
    FlowState flow;  // acyclic, on the padded instance
    TreeDecomposition decomposition;
    PartitionReduction reduction;
};

ReductionRun run_reduction_pipeline(const GammoidInstance& inst, const ReduceOptions& opts = {});

}  // namespace gamred
