#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamred/errors.hpp"
#include "gamred/generator.hpp"
#include "gamred/reduce.hpp"
#include "gamred/report.hpp"
#include "gamred/verify.hpp"
#include "support/test_support.hpp"

using namespace gamred;
using namespace gamred::testing;

namespace {

GammoidInstance random_instance(std::uint64_t seed) {
    GenParams p;
    p.n_vertices = 20 + static_cast<int>(seed % 100);
    p.n_edges = p.n_vertices + 6 + static_cast<int>(seed % 20);
    p.n_sources = 3 + static_cast<int>(seed % 8);
    p.n_sinks = 1 + static_cast<int>(seed % 4);
    p.layers = 2 + static_cast<int>(seed % 4);
    p.seed = seed;
    return gen_random(p);
}

}  // namespace

TEST_CASE("MATCH(m) reduces to singleton parts at k = 1") {
    for (int m : {1, 3, 5}) {
        auto pr = partition_reduction(match(m));
        CHECK(pr.k == 1);
        CHECK(pr.bound == 1);
        CHECK(pr.parts.size() == static_cast<size_t>(m));
        for (const auto& part : pr.parts) CHECK(part.size() == 1);
        CHECK(pr.dummy_sources.empty());
    }
}

TEST_CASE("STAR(k) reduces to a single part of size k") {
    for (int k : {2, 3, 5}) {
        auto pr = partition_reduction(star(k));
        CHECK(pr.k == k);
        CHECK(pr.bound == 2 * k - 2);
        REQUIRE(pr.parts.size() == 1);
        CHECK(static_cast<int>(pr.parts[0].size()) == k);
        CHECK(pr.stats.max_part_size == k);
        CHECK(pr.stats.case_counts.at("base_b") == 1);
    }
}

TEST_CASE("random reductions respect the bound and the weak-map property") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto inst = random_instance(seed);
        auto pr = partition_reduction(inst);
        CAPTURE(seed);
        CHECK(pr.stats.max_part_size <= pr.bound);

        auto partition_report = verify_partition(inst, pr);
        CHECK(partition_report.ok());

        WeakMapOptions opts;
        opts.exhaustive_budget = 20000;
        opts.samples = 500;
        opts.seed = seed;
        auto weak_map_report = verify_weak_map(inst, pr, opts);
        CHECK(weak_map_report.ok());
        CHECK(weak_map_report.transversals_checked > 0);
    }
}

TEST_CASE("dummy sources are flagged and kept out of the real universe") {
    // One under-used sink forces padding.
    GammoidInstance inst;
    inst.n = 6;
    inst.edges = {{0, 3}, {1, 5}, {2, 3}, {3, 4}};
    inst.sources = {0, 1, 2};
    inst.sinks = {4, 5};
    inst.finalize();
    auto pr = partition_reduction(inst);
    CHECK(pr.k == 2);
    REQUIRE(pr.dummy_sources.size() == 1);
    CHECK(pr.dummy_sources[0] >= inst.n);  // fresh id
    int covered = 0;
    for (const auto& part : pr.parts) covered += static_cast<int>(part.size());
    CHECK(covered == 4);  // three real sources plus the dummy
}

TEST_CASE("the pipeline is deterministic end to end") {
    auto inst = random_instance(7);
    auto a = reduction_report(partition_reduction(inst)).dump();
    auto b = reduction_report(partition_reduction(inst)).dump();
    CHECK(a == b);
}

TEST_CASE("reduction reports round-trip through JSON") {
    auto pr = partition_reduction(star(4));
    auto doc = reduction_report(pr);
    auto back = reduction_from_report(doc);
    CHECK(back.k == pr.k);
    CHECK(back.bound == pr.bound);
    CHECK(back.parts == pr.parts);
    CHECK(back.dummy_sources == pr.dummy_sources);
}

TEST_CASE("unnormalized input is rejected") {
    GammoidInstance inst;
    inst.n = 3;
    inst.edges = {{0, 1}, {1, 2}, {1, 0}};
    inst.sources = {0};
    inst.sinks = {2};
    inst.finalize();
    CHECK_THROWS_AS(partition_reduction(inst), InvalidInstance);
}

TEST_CASE("an unroutable source surfaces as UncolorableSource") {
    GammoidInstance inst;
    inst.n = 4;  // 0 -> 1 dead end; 2 -> 3 sink
    inst.edges = {{0, 1}, {2, 3}};
    inst.sources = {0, 2};
    inst.sinks = {3};
    inst.finalize();
    REQUIRE(is_normalized(inst));
    CHECK_THROWS_AS(partition_reduction(inst), UncolorableSource);
}

TEST_CASE("fast mode skips per-step checks but keeps the outcome") {
    auto inst = random_instance(11);
    ReduceOptions fast;
    fast.check_tree_flow_each_step = false;
    auto a = partition_reduction(inst);
    auto b = partition_reduction(inst, fast);
    CHECK(a.parts == b.parts);
    CHECK(a.k == b.k);
}
