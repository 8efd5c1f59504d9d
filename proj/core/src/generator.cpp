#include "gamred/generator.hpp"

#include <algorithm>
#include <set>

#include "gamred/errors.hpp"
#include "gamred/independence.hpp"
#include "gamred/rng.hpp"

namespace gamred {

GammoidInstance gen_random(const GenParams& p) {
    if (p.n_sources < 1) throw GenerationFailed("need at least one source");
    if (p.n_sinks < 1) throw GenerationFailed("need at least one sink");
    if (p.layers < 1) throw GenerationFailed("need at least one layer hop");
    const int middle = p.n_vertices - p.n_sources - p.n_sinks;
    if (middle < 0) throw GenerationFailed("n_sources + n_sinks exceeds n_vertices");
    const int middle_layers = p.layers - 1;
    if (middle_layers == 0 && middle != 0)
        throw GenerationFailed("layers=1 leaves no room for middle vertices");
    if (middle_layers > 0 && middle < middle_layers)
        throw GenerationFailed("not enough vertices to populate every middle layer");

    // Vertex ids in layer order: sources, middle layers, sinks.
    std::vector<std::vector<VertexId>> layer(p.layers + 1);
    int next_id = 0;
    for (int i = 0; i < p.n_sources; ++i) layer[0].push_back(next_id++);
    for (int li = 1; li <= middle_layers; ++li) {
        int size = middle / middle_layers + (li <= middle % middle_layers ? 1 : 0);
        for (int i = 0; i < size; ++i) layer[li].push_back(next_id++);
    }
    for (int i = 0; i < p.n_sinks; ++i) layer[p.layers].push_back(next_id++);

    std::vector<int> later_total(p.layers + 1, 0);
    for (int li = p.layers - 1; li >= 0; --li)
        later_total[li] = later_total[li + 1] + static_cast<int>(layer[li + 1].size());

    const int mandatory = p.n_vertices - p.n_sinks;  // one out-edge per non-sink
    if (p.n_edges < mandatory)
        throw GenerationFailed("n_edges below the per-vertex minimum of " +
                               std::to_string(mandatory));

    Rng rng(p.seed);
    std::set<Edge> edges;
    auto forward_target = [&](int from_layer) {
        int offset = rng.uniform_int(0, later_total[from_layer] - 1);
        for (int lj = from_layer + 1; lj <= p.layers; ++lj) {
            if (offset < static_cast<int>(layer[lj].size())) return layer[lj][offset];
            offset -= static_cast<int>(layer[lj].size());
        }
        throw InternalError("forward target out of range");
    };

    for (int li = 0; li < p.layers; ++li) {
        for (VertexId v : layer[li]) edges.insert({v, forward_target(li)});
    }

    // Extra edges leave middle vertices only, keeping sources at out-degree 1.
    // n_edges is a target: generation stops early once the forward-edge
    // capacity between the middle layers is exhausted.
    long long capacity = 0;
    for (int li = 1; li < p.layers; ++li)
        capacity += static_cast<long long>(layer[li].size()) * later_total[li];
    long long middle_mandatory = static_cast<long long>(edges.size()) - p.n_sources;
    int wanted_extras = static_cast<int>(
        std::min<long long>(p.n_edges - static_cast<int>(edges.size()),
                            capacity - middle_mandatory));

    int attempts = 0;
    const int attempt_budget = 50 * (wanted_extras + 1) + 100;
    std::vector<VertexId> middle_vertices;
    for (int li = 1; li < p.layers; ++li)
        middle_vertices.insert(middle_vertices.end(), layer[li].begin(), layer[li].end());
    std::vector<int> layer_of(p.n_vertices);
    for (int li = 0; li <= p.layers; ++li)
        for (VertexId v : layer[li]) layer_of[v] = li;

    while (wanted_extras > 0 && !middle_vertices.empty()) {
        if (++attempts > attempt_budget) break;
        VertexId from = middle_vertices[rng.uniform_index(middle_vertices.size())];
        VertexId to = forward_target(layer_of[from]);
        if (edges.insert({from, to}).second) --wanted_extras;
    }
    if (wanted_extras > 0) {
        // Deterministic sweep for the remainder.
        for (int li = 1; li < p.layers && wanted_extras > 0; ++li) {
            for (VertexId v : layer[li]) {
                for (int lj = li + 1; lj <= p.layers && wanted_extras > 0; ++lj) {
                    for (VertexId w : layer[lj]) {
                        if (wanted_extras > 0 && edges.insert({v, w}).second) --wanted_extras;
                    }
                }
            }
        }
    }
    if (wanted_extras > 0)
        throw GenerationFailed("could not place the requested edge count");

    GammoidInstance raw;
    raw.n = p.n_vertices;
    raw.edges.assign(edges.begin(), edges.end());
    raw.sources = layer[0];
    raw.sinks = layer[p.layers];
    raw.finalize();

    if (!unroutable_sources(raw).empty())
        throw InternalError("generated source cannot reach a sink");
    return normalize(raw).first;
}

}  // namespace gamred
