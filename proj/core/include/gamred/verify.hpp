#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gamred/independence.hpp"
#include "gamred/instance.hpp"
#include "gamred/reduce.hpp"

namespace gamred {

// Vertex-disjoint source-to-sink paths witnessing independence.
struct RoutingCertificate {
    std::map<VertexId, std::vector<VertexId>> paths;  // source -> vertex sequence
};

struct VerificationFailure {
    std::vector<VertexId> transversal;  // empty for partition-shape failures
    std::string reason;
};

struct VerificationReport {
    bool partition_ok = true;
    bool sizes_ok = true;
    long long transversals_checked = 0;
    std::vector<VerificationFailure> failures;
    long long failure_count = 0;  // failures beyond the recorded cap still count
    bool exhaustive = true;
    std::uint64_t seed = 0;

    bool ok() const { return failure_count == 0 && partition_ok && sizes_ok; }
};

// Checks that the parts are pairwise disjoint, cover exactly the instance's
// sources plus the declared dummies, and respect the max(1, 2k-2) size bound.
VerificationReport verify_partition(const GammoidInstance& inst, const PartitionReduction& pr);

struct WeakMapOptions {
    long long exhaustive_budget = 100000;  // max transversal count for full enumeration
    int samples = 10000;                   // seeded draws otherwise
    std::uint64_t seed = 1;
    int max_recorded_failures = 32;
    bool force_exhaustive = false;  // fail instead of sampling when over budget
};

// The weak-map property: every maximal transversal (one source per part),
// restricted to real sources, must be independent in the gammoid. Exhaustive
// when the transversal count fits the budget, otherwise seeded sampling.
// Sub-transversals are covered by hereditariness and not re-checked.
VerificationReport verify_weak_map(const GammoidInstance& inst, const PartitionReduction& pr,
                                   const WeakMapOptions& opts = {});

// Vertex-disjoint paths for an independent set, from unit-capacity max flow
// plus path extraction. Throws NotIndependent if Y is dependent. The
// certificate is structurally re-validated before returning.
RoutingCertificate extract_routing(const GammoidInstance& inst, const SourceSet& Y);

// Exhaustive minimum number of independent classes partitioning the sources.
// Subset DP over independence of all 2^|S| source sets; throws TooLarge above
// the limit and UncolorableSource when no finite coloring exists.
int brute_force_coloring_number(const GammoidInstance& inst, int limit = 8);

// Number of maximal transversals (product of part sizes), clamped to cap.
long long transversal_count(const PartitionReduction& pr, long long cap);

}  // namespace gamred
