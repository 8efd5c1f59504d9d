#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gamred/errors.hpp"
#include "gamred/generator.hpp"
#include "gamred/independence.hpp"
#include "gamred/instance.hpp"
#include "support/test_support.hpp"

using namespace gamred;
using namespace gamred::testing;

TEST_CASE("parse a three-vertex path") {
    auto inst = parse_instance("p gammoid 3 2\na 1 2\na 2 3\ns 1\nt 3\n");
    CHECK(inst.n == 3);
    CHECK(inst.edges == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(inst.sources == std::vector<VertexId>{0});
    CHECK(inst.sinks == std::vector<VertexId>{2});
    CHECK(inst.dummy_flags == std::vector<bool>{false});
}

TEST_CASE("parse tolerates comments and collapses duplicate arcs") {
    auto inst = parse_instance("# header comment\np gammoid 2 3\na 1 2\na 1 2\n# mid\na 1 2\ns 1\nt 2\n");
    CHECK(inst.edges.size() == 1);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_instance("a 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("p gammoid 2 1\na 1 3\ns 1\nt 2\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("p gammoid 2 1\na 1 2\ns 1\nt 1\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("p gammoid 2 1\na 1 1\ns 1\nt 2\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("p gammoid 2 2\na 1 2\ns 1\nt 2\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("p gammoid 2 1\nq 1 2\ns 1\nt 2\n"), ParseError);

    try {
        parse_instance("p gammoid 2 1\na 1 2\ns 1\nt 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
    }
}

TEST_CASE("STAR(3) fixture file has 5 vertices and 4 edges") {
    auto inst = parse_instance(
        "p gammoid 5 4\na 1 4\na 2 4\na 3 4\na 4 5\ns 1\ns 2\ns 3\nt 5\n");
    CHECK(inst.n == 5);
    CHECK(inst.edges.size() == 4);
    CHECK(inst == star(3));
}

TEST_CASE("serialize round-trips canonical files bit-exactly") {
    std::string canonical = "p gammoid 5 4\na 1 4\na 2 4\na 3 4\na 4 5\ns 1\ns 2\ns 3\nt 5\n";
    CHECK(serialize_instance(parse_instance(canonical)) == canonical);
    auto inst = star(4);
    CHECK(parse_instance(serialize_instance(inst)) == inst);
}

TEST_CASE("normalize keeps conforming instances untouched") {
    auto inst = star(3);
    auto [normalized, map] = normalize(inst);
    CHECK(normalized == inst);
    CHECK(map.is_identity());
}

TEST_CASE("normalize subdivides one edge of every antiparallel pair") {
    GammoidInstance inst;
    inst.n = 4;
    inst.edges = {{0, 1}, {1, 2}, {2, 1}, {2, 3}};
    inst.sources = {0};
    inst.sinks = {3};
    inst.finalize();
    auto [normalized, map] = normalize(inst);
    std::set<Edge> edge_set(normalized.edges.begin(), normalized.edges.end());
    for (const auto& [u, v] : normalized.edges) CHECK(edge_set.count({v, u}) == 0);
    CHECK(is_normalized(normalized));
    CHECK(normalized.n == inst.n + 1);
}

TEST_CASE("normalize splits vertices with in- and out-degree >= 2") {
    // w has in-degree 2 and out-degree 2.
    GammoidInstance inst;
    inst.n = 7;
    inst.edges = {{0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 6}};
    inst.sources = {0, 1};
    inst.sinks = {5, 6};
    inst.finalize();
    REQUIRE_FALSE(is_normalized(inst));
    auto [normalized, map] = normalize(inst);
    CHECK(is_normalized(normalized));

    // Independence of every source subset is preserved (path-enumeration oracle).
    for (const auto& subset : all_source_subsets(inst)) {
        CHECK(paths_oracle_independent(inst, subset) ==
              paths_oracle_independent(normalized, subset));
        CHECK(paths_oracle_independent(normalized, subset) == is_independent(normalized, subset));
    }
}

TEST_CASE("normalize gives sources and sinks private gadgets") {
    // Source 0 has an incoming edge and out-degree 2; sink 3 has out-degree 1
    // and in-degree 2.
    GammoidInstance inst;
    inst.n = 4;
    inst.edges = {{0, 1}, {0, 3}, {1, 0}, {1, 3}, {3, 2}};
    inst.sources = {0};
    inst.sinks = {3};
    inst.finalize();
    auto [normalized, map] = normalize(inst);
    CHECK(is_normalized(normalized));
    CHECK(normalized.in_degree(0) == 0);
    CHECK(normalized.out_degree(0) == 1);
    CHECK(normalized.in_degree(3) == 1);
    CHECK(normalized.out_degree(3) == 0);
    for (const auto& subset : all_source_subsets(inst)) {
        CHECK(paths_oracle_independent(inst, subset) ==
              paths_oracle_independent(normalized, subset));
    }
}

TEST_CASE("normalize is idempotent") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GenParams p;
        p.n_vertices = 14;
        p.n_edges = 18;
        p.n_sources = 4;
        p.n_sinks = 3;
        p.layers = 3;
        p.seed = seed;
        auto inst = gen_random(p);  // already normalized
        auto [again, map] = normalize(inst);
        CHECK(again == inst);
        CHECK(map.is_identity());
    }
}

TEST_CASE("normalize rejects empty source or sink sets") {
    GammoidInstance no_sinks;
    no_sinks.n = 2;
    no_sinks.edges = {{0, 1}};
    no_sinks.sources = {0};
    no_sinks.finalize();
    CHECK_THROWS_AS(normalize(no_sinks), InvalidInstance);

    GammoidInstance no_sources;
    no_sources.n = 2;
    no_sources.edges = {{0, 1}};
    no_sources.sinks = {1};
    no_sources.finalize();
    CHECK_THROWS_AS(normalize(no_sources), InvalidInstance);
}

TEST_CASE("isolated sources get a dead-end gadget instead of an error") {
    GammoidInstance inst;
    inst.n = 3;
    inst.edges = {{1, 2}};
    inst.sources = {0, 1};
    inst.sinks = {2};
    inst.finalize();
    auto [normalized, map] = normalize(inst);
    CHECK(is_normalized(normalized));
    CHECK(normalized.out_degree(0) == 1);
    CHECK_FALSE(is_independent(normalized, {0}));
    CHECK(is_independent(normalized, {1}));
}
