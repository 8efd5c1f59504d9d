#pragma once

#include <cstdint>

#include "gamred/instance.hpp"

namespace gamred {

// Layered random DAG parameters. Layer 0 holds the sources, the last layer
// the sinks, and the remaining vertices spread over `layers - 1` middle
// layers; all edges run strictly forward. The seed fully determines the
// output.
struct GenParams {
    int n_vertices = 0;
    int n_edges = 0;
    int n_sources = 0;
    int n_sinks = 0;
    int layers = 1;  // hop count from source layer to sink layer
    std::uint64_t seed = 0;
};

// Generates a layered DAG (every non-sink vertex gets a forward edge, so
// every source reaches a sink), then normalizes it. Throws GenerationFailed
// on inconsistent parameters or an exhausted retry budget.
GammoidInstance gen_random(const GenParams& p);

}  // namespace gamred
