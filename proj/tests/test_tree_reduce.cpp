#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamred/errors.hpp"
#include "gamred/generator.hpp"
#include "gamred/tree_reduce.hpp"
#include "support/test_support.hpp"

using namespace gamred;
using namespace gamred::testing;

namespace {

TreeState make_tree(int k, const std::vector<std::pair<VertexId, VertexRole>>& vertices,
                    const std::vector<std::pair<VertexId, VertexId>>& edges) {
    TreeState t;
    t.k = k;
    VertexId max_id = 0;
    for (const auto& [v, role] : vertices) {
        t.add_vertex(v, role);
        max_id = std::max(max_id, v);
    }
    for (const auto& [a, b] : edges) t.add_edge(a, b);
    t.next_fresh_id = max_id + 1;
    return t;
}

using R = VertexRole;

// v=0 is a branching source portal feeding two single-portal arms.
TreeState fixture_1a() {
    return make_tree(3,
                     {{0, R::SourcePortal},
                      {1, R::Normal},
                      {2, R::SinkPortal},
                      {3, R::Normal},
                      {4, R::SinkPortal},
                      {5, R::Source},
                      {6, R::Source},
                      {7, R::Source}},
                     {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {5, 1}, {6, 1}, {7, 3}});
}

// Source portal 1 sits on the path from v=0 to sink portal 3.
TreeState fixture_1b() {
    return make_tree(3,
                     {{0, R::Normal},
                      {1, R::SourcePortal},
                      {2, R::Normal},
                      {3, R::SinkPortal},
                      {4, R::Normal},
                      {5, R::SinkPortal},
                      {6, R::Source},
                      {7, R::Source}},
                     {{1, 0}, {1, 2}, {2, 3}, {0, 4}, {4, 5}, {6, 2}, {7, 4}});
}

// y=2 splits the first arm; S(P(y, z1)) = {7, 8, 9} fits in 2k-2.
TreeState fixture_2a() {
    return make_tree(3,
                     {{0, R::Normal},
                      {1, R::Normal},
                      {2, R::Normal},
                      {3, R::Normal},
                      {4, R::SinkPortal},
                      {5, R::Normal},
                      {6, R::SinkPortal},
                      {7, R::Source},
                      {8, R::Source},
                      {9, R::Source},
                      {10, R::Source},
                      {11, R::Source}},
                     {{2, 1},
                      {1, 0},
                      {2, 3},
                      {3, 4},
                      {0, 5},
                      {5, 6},
                      {7, 2},
                      {8, 2},
                      {9, 3},
                      {10, 1},
                      {11, 5}});
}

// S(P(y, z1)) = 5 > 2k-2 but S(y) = {7, 8, 9} has exactly k sources.
TreeState fixture_2b() {
    return make_tree(3,
                     {{0, R::Normal},
                      {1, R::Normal},
                      {2, R::Normal},
                      {3, R::Normal},
                      {4, R::SinkPortal},
                      {5, R::Normal},
                      {6, R::SinkPortal},
                      {7, R::Source},
                      {8, R::Source},
                      {9, R::Source},
                      {10, R::Source},
                      {11, R::Source},
                      {12, R::Source}},
                     {{2, 1},
                      {1, 0},
                      {2, 3},
                      {3, 4},
                      {0, 5},
                      {5, 6},
                      {7, 2},
                      {8, 2},
                      {9, 2},
                      {10, 3},
                      {11, 3},
                      {12, 5}});
}

// S(y) = 2 < k but the sources strictly below y number exactly k (one of
// them hangs at the sink portal itself).
TreeState fixture_2c() {
    return make_tree(3,
                     {{0, R::Normal},
                      {1, R::Normal},
                      {2, R::Normal},
                      {3, R::Normal},
                      {4, R::SinkPortal},
                      {5, R::Normal},
                      {6, R::SinkPortal},
                      {7, R::Source},
                      {8, R::Source},
                      {9, R::Source},
                      {10, R::Source},
                      {11, R::Source},
                      {12, R::Source}},
                     {{2, 1},
                      {1, 0},
                      {2, 3},
                      {3, 4},
                      {0, 5},
                      {5, 6},
                      {7, 2},
                      {8, 2},
                      {9, 3},
                      {10, 3},
                      {11, 4},
                      {12, 5}});
}

// Both arms are directed away from v with no splits; arm 1 holds exactly k
// sources.
TreeState fixture_3a() {
    return make_tree(3,
                     {{0, R::Normal},
                      {1, R::Normal},
                      {2, R::SinkPortal},
                      {3, R::Normal},
                      {4, R::SinkPortal},
                      {7, R::Source},
                      {8, R::Source},
                      {9, R::Source},
                      {10, R::Source},
                      {11, R::Source}},
                     {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {7, 1}, {8, 1}, {9, 1}, {10, 3}, {11, 3}});
}

// Both arms hold k-1 sources; a third multi-portal branch keeps the source
// count above 2k-2 so no base case fires.
TreeState fixture_3b() {
    return make_tree(
        3,
        {{0, R::Normal},
         {1, R::Normal},
         {2, R::SinkPortal},
         {3, R::Normal},
         {4, R::SinkPortal},
         {5, R::Normal},
         {6, R::Normal},
         {7, R::SinkPortal},
         {8, R::Normal},
         {9, R::SinkPortal},
         {10, R::Source},
         {11, R::Source},
         {12, R::Source},
         {13, R::Source},
         {14, R::Source},
         {15, R::Source},
         {16, R::Source}},
        {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}, {6, 7}, {5, 8}, {8, 9},
         {10, 1}, {11, 1}, {12, 3}, {13, 3}, {14, 6}, {15, 8}, {16, 5}});
}

TreeState star_tree(int k) {
    std::vector<std::pair<VertexId, VertexRole>> vertices;
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int i = 0; i < k; ++i) {
        vertices.push_back({i, R::Source});
        edges.push_back({i, k});
    }
    vertices.push_back({k, R::SinkPortal});
    return make_tree(k, vertices, edges);
}

}  // namespace

TEST_CASE("backbone of a two-portal tree is the connecting path") {
    auto t = make_tree(2,
                       {{0, R::SinkPortal},
                        {1, R::Normal},
                        {2, R::SinkPortal},
                        {3, R::Source},
                        {4, R::Source}},
                       {{1, 0}, {1, 2}, {3, 1}, {4, 1}});
    auto b = backbone(t);
    CHECK(b.vertices == std::set<VertexId>{0, 1, 2});
    CHECK(b.edges == std::set<std::pair<VertexId, VertexId>>{{1, 0}, {1, 2}});
    CHECK(b.hanging_sources.at(1) == std::vector<VertexId>{3, 4});
    CHECK(b.out_degree(1) == 2);
    CHECK(hanging_edges_point_to_backbone(t, b));
}

TEST_CASE("backbone of a single-portal tree is just the portal") {
    auto t = star_tree(3);
    auto b = backbone(t);
    CHECK(b.vertices == std::set<VertexId>{3});
    CHECK(b.edges.empty());
    CHECK(b.branching.empty());
    CHECK(b.hanging_sources.at(3) == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("the center of a three-portal spider is a branching vertex") {
    auto t = make_tree(2,
                       {{0, R::Normal},
                        {1, R::SinkPortal},
                        {2, R::SinkPortal},
                        {3, R::SinkPortal},
                        {4, R::Source},
                        {5, R::Source}},
                       {{0, 1}, {0, 2}, {0, 3}, {4, 0}, {5, 0}});
    auto b = backbone(t);
    CHECK(b.vertices == std::set<VertexId>{0, 1, 2, 3});
    REQUIRE_FALSE(b.branching.empty());
    CHECK(std::find(b.branching.begin(), b.branching.end(), 0) != b.branching.end());
}

TEST_CASE("select_case walks the case ladder in order") {
    auto sourceless = make_tree(3, {{0, R::SinkPortal}}, {});
    CHECK(select_case(sourceless, backbone(sourceless)) == CaseTag::BaseA);

    auto star3 = star_tree(3);
    CHECK(select_case(star3, backbone(star3)) == CaseTag::BaseB);

    auto t1a = fixture_1a();
    CHECK(select_case(t1a, backbone(t1a)) == CaseTag::Case1a);
    auto t1b = fixture_1b();
    CHECK(select_case(t1b, backbone(t1b)) == CaseTag::Case1b);
    auto t2a = fixture_2a();
    CHECK(select_case(t2a, backbone(t2a)) == CaseTag::Case2a);
    auto t2b = fixture_2b();
    CHECK(select_case(t2b, backbone(t2b)) == CaseTag::Case2b);
    auto t2c = fixture_2c();
    CHECK(select_case(t2c, backbone(t2c)) == CaseTag::Case2c);
    auto t3a = fixture_3a();
    CHECK(select_case(t3a, backbone(t3a)) == CaseTag::Case3a);
    auto t3b = fixture_3b();
    CHECK(select_case(t3b, backbone(t3b)) == CaseTag::Case3b);
}

TEST_CASE("check_tree_flow accepts feasible trees and rejects overloads") {
    CHECK(check_tree_flow(star_tree(3)));
    for (auto make : {fixture_1a, fixture_1b, fixture_2a, fixture_2b, fixture_2c, fixture_3a,
                      fixture_3b}) {
        CHECK(check_tree_flow(make()));
    }
    // k + 1 sources against a single sink portal cannot route.
    auto overloaded = make_tree(3,
                                {{0, R::SinkPortal},
                                 {1, R::Source},
                                 {2, R::Source},
                                 {3, R::Source},
                                 {4, R::Source}},
                                {{1, 0}, {2, 0}, {3, 0}, {4, 0}});
    CHECK_FALSE(check_tree_flow(overloaded));
}

TEST_CASE("apply_case rejects a stale tag") {
    auto t = star_tree(3);
    auto b = backbone(t);
    CHECK_THROWS_AS(apply_case(t, CaseTag::Case3b, b), InternalError);
}

TEST_CASE("BaseB emits the remaining sources of STAR(k)") {
    auto t = star_tree(3);
    auto b = backbone(t);
    auto applied = apply_case(t, CaseTag::BaseB, b);
    CHECK(applied.done);
    CHECK(applied.part == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("case 1a reattaches arm sources and demotes the portal") {
    auto t = fixture_1a();
    auto b = backbone(t);
    auto applied = apply_case(t, CaseTag::Case1a, b);
    CHECK_FALSE(applied.done);
    CHECK(applied.part.empty());
    CHECK(t.roles.at(0) == R::Normal);
    CHECK_FALSE(t.contains(1));
    CHECK_FALSE(t.contains(2));
    CHECK(t.out.at(5).count(0) == 1);
    CHECK(t.out.at(6).count(0) == 1);
    CHECK(check_tree_flow(t));
}

TEST_CASE("case 3a deletes the exact-k arm wholesale") {
    auto t = fixture_3a();
    auto b = backbone(t);
    auto applied = apply_case(t, CaseTag::Case3a, b);
    CHECK(applied.part == std::vector<VertexId>{7, 8, 9});
    CHECK_FALSE(t.contains(1));
    CHECK_FALSE(t.contains(2));
    CHECK(t.contains(0));
    CHECK(check_tree_flow(t));
}

TEST_CASE("case 3b emits a 2k-2 part and adds a virtual sink portal") {
    auto t = fixture_3b();
    auto b = backbone(t);
    auto applied = apply_case(t, CaseTag::Case3b, b);
    CHECK(applied.part == std::vector<VertexId>{10, 11, 12, 13});
    CHECK(applied.part.size() == 4);  // 2k - 2 with k = 3
    VertexId fresh = 17;
    REQUIRE(t.contains(fresh));
    CHECK(t.roles.at(fresh) == R::SinkPortal);
    CHECK(t.virtual_vertices.count(fresh) == 1);
    CHECK(t.out.at(0).count(fresh) == 1);
    CHECK(check_tree_flow(t));
}

TEST_CASE("reduce_tree runs each fixture to completion") {
    ReduceTreeOptions opts;
    opts.check_flow_each_step = true;

    auto sourceless = make_tree(3, {{0, R::SinkPortal}}, {});
    CHECK(reduce_tree(sourceless, opts).parts.empty());

    auto star_result = reduce_tree(star_tree(4), opts);
    REQUIRE(star_result.parts.size() == 1);
    CHECK(star_result.parts[0] == std::vector<VertexId>{0, 1, 2, 3});

    struct Expected {
        TreeState (*make)();
        CaseTag tag;
        std::vector<std::vector<VertexId>> parts;
    };
    const std::vector<Expected> table = {
        {fixture_1a, CaseTag::Case1a, {{5, 6, 7}}},
        {fixture_1b, CaseTag::Case1b, {{6, 7}}},
        {fixture_2a, CaseTag::Case2a, {{7, 8, 9}, {10, 11}}},
        {fixture_2b, CaseTag::Case2b, {{7, 8, 9}, {10, 11, 12}}},
        {fixture_2c, CaseTag::Case2c, {{9, 10, 11}, {7, 8, 12}}},
        {fixture_3a, CaseTag::Case3a, {{7, 8, 9}, {10, 11}}},
        {fixture_3b, CaseTag::Case3b, {{10, 11, 12, 13}, {14, 15, 16}}},
    };
    for (const auto& expected : table) {
        CAPTURE(case_name(expected.tag));
        auto result = reduce_tree(expected.make(), opts);
        CHECK(result.case_counts.at(expected.tag) == 1);
        CHECK(result.case_counts.at(CaseTag::BaseB) == 1);
        CHECK(result.parts == expected.parts);
    }
}

TEST_CASE("reduce_tree handles every tree of random decompositions") {
    ReduceTreeOptions opts;
    opts.check_flow_each_step = true;
    for (std::uint64_t seed = 50; seed <= 80; ++seed) {
        GenParams p;
        p.n_vertices = 18 + static_cast<int>(seed % 24);
        p.n_edges = p.n_vertices + 12;
        p.n_sources = 4 + static_cast<int>(seed % 6);
        p.n_sinks = 1 + static_cast<int>(seed % 3);
        p.layers = 2 + static_cast<int>(seed % 3);
        p.seed = seed;
        auto inst = gen_random(p);
        int k = coloring_number(inst);
        if (k < 2) continue;
        auto [padded, padded_flow] = pad_with_dummies(inst, k, *feasible_flow(inst, k));
        auto canceled = cancel_cycles(padded, padded_flow);
        auto dec = decompose(padded, canceled);
        for (int i = 0; i < static_cast<int>(dec.trees.size()); ++i) {
            TreeState state = tree_state_from(padded, dec, i);
            state.k = k;
            auto expected_sources = state.source_list();
            auto result = reduce_tree(std::move(state), opts);
            std::vector<VertexId> covered;
            for (const auto& part : result.parts) {
                CHECK(static_cast<int>(part.size()) <= 2 * k - 2);
                covered.insert(covered.end(), part.begin(), part.end());
            }
            std::sort(covered.begin(), covered.end());
            CHECK(covered == expected_sources);
        }
    }
}
