#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gamred/decompose.hpp"
#include "gamred/generator.hpp"
#include "gamred/independence.hpp"
#include "support/test_support.hpp"

using namespace gamred;
using namespace gamred::testing;

namespace {

// Two capacity-2 pipes crossing over a 4-cycle of unit flows: the edges
// a->t1, a->t2, b->t1, b->t2 are all strictly fractional at k = 2.
//
//   s0,s1 -> c -> a,  s2,s3 -> d -> b,  t1 -> w1 -> z1,  t2 -> w2 -> z2
struct CrossingFixture {
    GammoidInstance inst;
    FlowState flow;

    CrossingFixture() {
        inst.n = 14;
        // ids: s0..s3 = 0..3, c=4, d=5, a=6, b=7, t1=8, t2=9, w1=10, w2=11,
        // z1=12, z2=13
        inst.edges = {{0, 4}, {1, 4}, {2, 5},  {3, 5},  {4, 6},  {5, 7},  {6, 8},
                      {6, 9}, {7, 8}, {7, 9},  {8, 10}, {9, 11}, {10, 12}, {11, 13}};
        inst.sources = {0, 1, 2, 3};
        inst.sinks = {12, 13};
        inst.finalize();
        REQUIRE(is_normalized(inst));
        flow.k = 2;
        flow.edge_flow.assign(inst.edges.size(), 0);
        auto set = [&](VertexId u, VertexId v, int value) {
            for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e) {
                if (inst.edges[e] == Edge{u, v}) {
                    flow.edge_flow[e] = value;
                    return;
                }
            }
            REQUIRE(false);
        };
        for (VertexId s : inst.sources) set(s, s < 2 ? 4 : 5, 1);
        set(4, 6, 2);
        set(5, 7, 2);
        set(6, 8, 1);
        set(6, 9, 1);
        set(7, 8, 1);
        set(7, 9, 1);
        set(8, 10, 2);
        set(9, 11, 2);
        set(10, 12, 2);
        set(11, 13, 2);
        check_flow_feasible(inst, flow);
    }
};

int fractional_count(const FlowState& f) {
    int count = 0;
    for (int fv : f.edge_flow) count += (fv > 0 && fv < f.k);
    return count;
}

}  // namespace

TEST_CASE("no augmenting cycle when every edge sits at 0 or k") {
    auto inst = match(2);
    auto f = feasible_flow(inst, 1);
    REQUIRE(f.has_value());
    CHECK_FALSE(find_augmenting_cycle(make_residual(inst, *f)).has_value());
}

TEST_CASE("no augmenting cycle in the STAR(3) flow") {
    auto inst = star(3);
    auto f = feasible_flow(inst, 3);
    REQUIRE(f.has_value());
    CHECK_FALSE(find_augmenting_cycle(make_residual(inst, *f)).has_value());
}

TEST_CASE("the crossing fixture yields a 4-arc residual cycle") {
    CrossingFixture fx;
    auto view = make_residual(fx.inst, fx.flow);
    auto cycle = find_augmenting_cycle(view);
    REQUIRE(cycle.has_value());
    CHECK(cycle->size() == 4);
    std::set<int> cycle_edges;
    for (int arc_id : *cycle) {
        const auto& arc = view.arcs[arc_id];
        CHECK(view.fractional[arc.edge]);
        cycle_edges.insert(arc.edge);
    }
    CHECK(cycle_edges.size() == 4);  // simple, four distinct edges
}

TEST_CASE("cancel_cycles leaves an acyclic flow untouched") {
    auto inst = star(3);
    auto f = feasible_flow(inst, 3);
    REQUIRE(f.has_value());
    CancelStats stats;
    auto canceled = cancel_cycles(inst, *f, &stats);
    CHECK(stats.iterations == 0);
    CHECK(canceled.edge_flow == f->edge_flow);
}

TEST_CASE("cancel_cycles resolves the crossing fixture in one push") {
    CrossingFixture fx;
    CancelStats stats;
    auto canceled = cancel_cycles(fx.inst, fx.flow, &stats);
    CHECK(stats.iterations == 1);
    // The four crossing edges leave the fractional range; the source fans
    // (one unit each under k = 2) legitimately stay fractional.
    for (int e = 0; e < static_cast<int>(fx.inst.edges.size()); ++e) {
        if (fx.inst.edges[e].first == 6 || fx.inst.edges[e].first == 7) {
            CHECK((canceled.edge_flow[e] == 0 || canceled.edge_flow[e] == 2));
        }
    }
    CHECK(fractional_count(canceled) == 4);
    CHECK(canceled.value(fx.inst) == 4);
    CHECK_FALSE(find_augmenting_cycle(make_residual(fx.inst, canceled)).has_value());

    auto dec = decompose(fx.inst, canceled);
    REQUIRE(dec.trees.size() == 2);
    CHECK(dec.trees[0].vertices == std::vector<VertexId>{0, 1, 4});
    CHECK(dec.trees[1].vertices == std::vector<VertexId>{2, 3, 5});
    CHECK(dec.roles[4] == VertexRole::SinkPortal);
    CHECK(dec.roles[5] == VertexRole::SinkPortal);
}

TEST_CASE("cancel_cycles establishes the acyclic-flow properties on random instances") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        GenParams p;
        p.n_vertices = 20 + static_cast<int>(seed % 30);
        p.n_edges = p.n_vertices + 10;
        p.n_sources = 4 + static_cast<int>(seed % 5);
        p.n_sinks = 2 + static_cast<int>(seed % 2);
        p.layers = 2 + static_cast<int>(seed % 4);
        p.seed = seed;
        auto inst = gen_random(p);
        int k = coloring_number(inst);
        auto f = feasible_flow(inst, k);
        REQUIRE(f.has_value());
        auto [padded, padded_flow] = pad_with_dummies(inst, k, *f);
        int before_value = padded_flow.value(padded);

        CancelStats stats;
        auto canceled = cancel_cycles(padded, padded_flow, &stats);
        CHECK(stats.iterations <= static_cast<int>(padded.edges.size()));
        CHECK(canceled.value(padded) == before_value);
        // Forest / highway structure is asserted inside decompose.
        auto dec = decompose(padded, canceled);
        CHECK(dec.roles.size() == static_cast<size_t>(padded.n));
    }
}

TEST_CASE("decompose on STAR(3): one tree, hub is a sink portal, one highway") {
    auto inst = star(3);
    auto f = cancel_cycles(inst, *feasible_flow(inst, 3));
    auto dec = decompose(inst, f);
    REQUIRE(dec.trees.size() == 1);
    CHECK(dec.trees[0].vertices == std::vector<VertexId>{0, 1, 2, 3});
    CHECK(dec.roles[0] == VertexRole::Source);
    CHECK(dec.roles[3] == VertexRole::SinkPortal);
    CHECK(dec.roles[4] == VertexRole::Sink);
    REQUIRE(dec.highways.size() == 1);
    CHECK(dec.highways[0] == std::vector<VertexId>{3, 4});
}

TEST_CASE("decompose on MATCH(2) at k = 1: no trees, every edge a highway") {
    auto inst = match(2);
    auto f = cancel_cycles(inst, *feasible_flow(inst, 1));
    auto dec = decompose(inst, f);
    CHECK(dec.trees.empty());
    CHECK(dec.highways.size() == 2);
}

TEST_CASE("a saturated chain forms one maximal highway, not several") {
    // s0,s1 -> v2 -> v3 -> v4 (sink); k = 2 saturates the whole chain.
    GammoidInstance inst;
    inst.n = 5;
    inst.edges = {{0, 2}, {1, 2}, {2, 3}, {3, 4}};
    inst.sources = {0, 1};
    inst.sinks = {4};
    inst.finalize();
    auto f = cancel_cycles(inst, *feasible_flow(inst, 2));
    auto dec = decompose(inst, f);
    REQUIRE(dec.highways.size() == 1);
    CHECK(dec.highways[0] == std::vector<VertexId>{2, 3, 4});
}

TEST_CASE("every sink is a singleton tree receiving exactly k") {
    for (std::uint64_t seed = 31; seed <= 45; ++seed) {
        GenParams p;
        p.n_vertices = 16 + static_cast<int>(seed % 10);
        p.n_edges = p.n_vertices + 8;
        p.n_sources = 5;
        p.n_sinks = 2;
        p.layers = 3;
        p.seed = seed;
        auto inst = gen_random(p);
        int k = coloring_number(inst);
        auto [padded, padded_flow] = pad_with_dummies(inst, k, *feasible_flow(inst, k));
        auto canceled = cancel_cycles(padded, padded_flow);
        auto dec = decompose(padded, canceled);  // throws InternalError on violation
        for (const auto& tree : dec.trees) {
            int sources = 0, sp = 0, zp = 0;
            for (VertexId v : tree.vertices) {
                CHECK(dec.roles[v] != VertexRole::Sink);
                sources += dec.roles[v] == VertexRole::Source;
                sp += dec.roles[v] == VertexRole::SourcePortal;
                zp += dec.roles[v] == VertexRole::SinkPortal;
            }
            CHECK(sources + k * sp == k * zp);
        }
    }
}
