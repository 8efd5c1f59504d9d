#include "gamred/reduce.hpp"

#include <algorithm>

#include "gamred/errors.hpp"
#include "gamred/tree_reduce.hpp"

namespace gamred {

ReductionRun run_reduction_pipeline(const GammoidInstance& inst, const ReduceOptions& opts) {
    if (!is_normalized(inst))
        throw InvalidInstance("partition_reduction expects a normalized instance");
    if (inst.sources.empty()) throw InvalidInstance("instance has no sources");
    if (inst.sinks.empty()) throw InvalidInstance("instance has no sinks");

    ReductionRun run;
    const int k = coloring_number(inst);
    auto flow = feasible_flow(inst, k);
    if (!flow) throw InternalError("coloring number is not feasible");

    auto [padded, padded_flow] = pad_with_dummies(inst, k, *flow);
    run.padded = std::move(padded);

    CancelStats cancel_stats;
    run.flow = cancel_cycles(run.padded, std::move(padded_flow), &cancel_stats);
    run.decomposition = decompose(run.padded, run.flow);

    PartitionReduction& pr = run.reduction;
    pr.k = k;
    pr.bound = std::max(1, 2 * k - 2);
    pr.stats.trees = static_cast<int>(run.decomposition.trees.size());
    pr.stats.highways = static_cast<int>(run.decomposition.highways.size());
    pr.stats.cancel_iterations = cancel_stats.iterations;
    for (size_t i = 0; i < run.padded.sources.size(); ++i) {
        if (run.padded.dummy_flags[i]) pr.dummy_sources.push_back(run.padded.sources[i]);
    }

    if (k == 1) {
        // All source edges carry exactly k = 1, so the fractional forest holds
        // no sources; each source forms its own part.
        for (VertexId s : run.padded.sources) pr.parts.push_back({s});
    } else {
        ReduceTreeOptions tree_opts;
        tree_opts.check_flow_each_step = opts.check_tree_flow_each_step;
        for (int i = 0; i < static_cast<int>(run.decomposition.trees.size()); ++i) {
            TreeState state = tree_state_from(run.padded, run.decomposition, i);
            state.k = k;
            ReduceTreeResult result = reduce_tree(std::move(state), tree_opts);
            for (auto& part : result.parts) pr.parts.push_back(std::move(part));
            for (const auto& [tag, count] : result.case_counts)
                pr.stats.case_counts[case_name(tag)] += count;
        }
    }

    for (const auto& part : pr.parts)
        pr.stats.max_part_size = std::max(pr.stats.max_part_size, static_cast<int>(part.size()));

    // Every source, dummies included, must land in exactly one part.
    std::vector<VertexId> covered;
    for (const auto& part : pr.parts) covered.insert(covered.end(), part.begin(), part.end());
    std::sort(covered.begin(), covered.end());
    if (covered != run.padded.sources)
        throw InternalError("reduction parts do not partition the sources");
    if (pr.stats.max_part_size > pr.bound)
        throw InternalError("reduction produced a part above the size bound");
    return run;
}

PartitionReduction partition_reduction(const GammoidInstance& inst, const ReduceOptions& opts) {
    return run_reduction_pipeline(inst, opts).reduction;
}

}  // namespace gamred
