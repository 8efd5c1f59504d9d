#include "gamred/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gamred/errors.hpp"
#include "gamred/max_flow.hpp"
#include "gamred/rng.hpp"

namespace gamred {

namespace {

std::string id_list(const std::vector<VertexId>& ids) {
    std::ostringstream os;
    for (size_t i = 0; i < ids.size(); ++i) os << (i ? " " : "") << ids[i] + 1;
    return os.str();
}

}  // namespace

long long transversal_count(const PartitionReduction& pr, long long cap) {
    long long count = 1;
    for (const auto& part : pr.parts) {
        if (part.empty()) continue;
        if (count > cap / static_cast<long long>(part.size()) + 1) return cap + 1;
        count *= static_cast<long long>(part.size());
        if (count > cap) return cap + 1;
    }
    return count;
}

VerificationReport verify_partition(const GammoidInstance& inst, const PartitionReduction& pr) {
    VerificationReport report;
    auto fail = [&](const std::string& reason) {
        report.failures.push_back({{}, reason});
        ++report.failure_count;
    };

    const int bound = std::max(1, 2 * pr.k - 2);
    if (pr.bound != bound) {
        report.sizes_ok = false;
        fail("declared bound " + std::to_string(pr.bound) + " differs from max(1, 2k-2) = " +
             std::to_string(bound));
    }
    for (const auto& part : pr.parts) {
        if (static_cast<int>(part.size()) > bound) {
            report.sizes_ok = false;
            fail("part {" + id_list(part) + "} exceeds the bound " + std::to_string(bound));
        }
    }

    std::set<VertexId> expected(inst.sources.begin(), inst.sources.end());
    for (VertexId d : pr.dummy_sources) {
        if (!expected.insert(d).second) {
            report.partition_ok = false;
            fail("dummy id collides with a real source: " + std::to_string(d + 1));
        }
    }
    std::set<VertexId> seen;
    for (const auto& part : pr.parts) {
        for (VertexId s : part) {
            if (!seen.insert(s).second) {
                report.partition_ok = false;
                fail("source " + std::to_string(s + 1) + " appears in two parts");
            }
            if (!expected.count(s)) {
                report.partition_ok = false;
                fail("part member " + std::to_string(s + 1) +
                     " is neither a source nor a declared dummy");
            }
        }
    }
    for (VertexId s : expected) {
        if (!seen.count(s)) {
            report.partition_ok = false;
            fail("source " + std::to_string(s + 1) + " is missing from every part");
        }
    }
    return report;
}

VerificationReport verify_weak_map(const GammoidInstance& inst, const PartitionReduction& pr,
                                   const WeakMapOptions& opts) {
    VerificationReport report;
    report.seed = opts.seed;

    std::set<VertexId> real_sources(inst.sources.begin(), inst.sources.end());
    std::vector<std::vector<VertexId>> parts;
    for (const auto& part : pr.parts) {
        if (!part.empty()) parts.push_back(part);
    }

    auto check_transversal = [&](const std::vector<VertexId>& transversal) {
        SourceSet real;
        for (VertexId s : transversal) {
            if (real_sources.count(s)) real.push_back(s);
        }
        ++report.transversals_checked;
        if (!is_independent(inst, real)) {
            ++report.failure_count;
            if (static_cast<int>(report.failures.size()) < opts.max_recorded_failures)
                report.failures.push_back(
                    {transversal, "transversal {" + id_list(transversal) + "} restricted to {" +
                                      id_list(real) + "} is dependent in the gammoid"});
        }
    };

    if (parts.empty()) return report;

    long long count = transversal_count(pr, opts.exhaustive_budget);
    report.exhaustive = count <= opts.exhaustive_budget;
    if (!report.exhaustive && opts.force_exhaustive)
        throw TooLarge("transversal count exceeds the exhaustive budget");

    std::vector<VertexId> transversal(parts.size());
    if (report.exhaustive) {
        // Odometer over one index per part.
        std::vector<size_t> pick(parts.size(), 0);
        while (true) {
            for (size_t i = 0; i < parts.size(); ++i) transversal[i] = parts[i][pick[i]];
            check_transversal(transversal);
            size_t i = 0;
            while (i < parts.size() && ++pick[i] == parts[i].size()) pick[i++] = 0;
            if (i == parts.size()) break;
        }
    } else {
        Rng rng(opts.seed);
        for (int draw = 0; draw < opts.samples; ++draw) {
            for (size_t i = 0; i < parts.size(); ++i)
                transversal[i] = parts[i][rng.uniform_index(parts[i].size())];
            check_transversal(transversal);
        }
    }
    return report;
}

RoutingCertificate extract_routing(const GammoidInstance& inst, const SourceSet& Y) {
    SourceSet members = Y;
    std::sort(members.begin(), members.end());
    if (!is_independent(inst, members))
        throw NotIndependent("no vertex-disjoint routing exists for {" + id_list(members) + "}");

    // Re-run the unit-capacity flow and walk the unit paths.
    const int n = inst.n;
    MaxFlowNetwork net(2 * n + 2);
    const int super_source = 2 * n, super_sink = 2 * n + 1;
    auto in_node = [](VertexId v) { return 2 * v; };
    auto out_node = [](VertexId v) { return 2 * v + 1; };
    for (VertexId v = 0; v < n; ++v) net.add_arc(in_node(v), out_node(v), 1);
    std::vector<int> edge_arc(inst.edges.size());
    for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e)
        edge_arc[e] = net.add_arc(out_node(inst.edges[e].first), in_node(inst.edges[e].second), 1);
    for (VertexId y : members) net.add_arc(super_source, in_node(y), 1);
    for (VertexId z : inst.sinks) net.add_arc(out_node(z), super_sink, 1);
    if (net.max_flow(super_source, super_sink) != static_cast<long long>(members.size()))
        throw InternalError("independence oracle and routing flow disagree");

    RoutingCertificate cert;
    std::vector<bool> edge_used(inst.edges.size(), false);
    for (VertexId y : members) {
        std::vector<VertexId> path{y};
        VertexId cur = y;
        while (!inst.is_sink(cur)) {
            int next_edge = -1;
            for (int e : inst.out_edges[cur]) {
                if (!edge_used[e] && net.flow_on(edge_arc[e]) == 1) {
                    next_edge = e;
                    break;
                }
            }
            if (next_edge < 0) throw InternalError("flow path ended before a sink");
            edge_used[next_edge] = true;
            cur = inst.edges[next_edge].second;
            path.push_back(cur);
            if (path.size() > static_cast<size_t>(n) + 1)
                throw InternalError("flow path revisits vertices");
        }
        cert.paths[y] = std::move(path);
    }

    // Structural validation, independent of how the paths were found.
    std::set<VertexId> used_vertices;
    for (const auto& [y, path] : cert.paths) {
        if (path.empty() || path.front() != y || !inst.is_sink(path.back()))
            throw InternalError("routing path with wrong endpoints");
        for (size_t j = 0; j + 1 < path.size(); ++j) {
            if (!std::binary_search(inst.edges.begin(), inst.edges.end(),
                                    Edge{path[j], path[j + 1]}))
                throw InternalError("routing path uses a missing edge");
        }
        for (VertexId v : path) {
            if (!used_vertices.insert(v).second)
                throw InternalError("routing paths share vertex " + std::to_string(v + 1));
        }
    }
    return cert;
}

int brute_force_coloring_number(const GammoidInstance& inst, int limit) {
    const int s_count = static_cast<int>(inst.sources.size());
    if (s_count > limit)
        throw TooLarge("brute_force_coloring_number limited to " + std::to_string(limit) +
                       " sources, got " + std::to_string(s_count));
    if (s_count == 0) return 1;
    auto bad = unroutable_sources(inst);
    if (!bad.empty())
        throw UncolorableSource(bad[0], "source " + std::to_string(bad[0] + 1) +
                                            " has no path to any sink");

    const int full = (1 << s_count) - 1;
    std::vector<bool> independent(full + 1, false);
    for (int mask = 0; mask <= full; ++mask) {
        SourceSet subset;
        for (int i = 0; i < s_count; ++i) {
            if (mask & (1 << i)) subset.push_back(inst.sources[i]);
        }
        independent[mask] = is_independent(inst, subset);
    }

    const int kInf = s_count + 1;
    std::vector<int> best(full + 1, kInf);
    best[0] = 0;
    for (int mask = 1; mask <= full; ++mask) {
        int low = mask & -mask;
        // Every class covering the lowest element; iterating submasks of mask.
        for (int sub = mask; sub > 0; sub = (sub - 1) & mask) {
            if (!(sub & low) || !independent[sub]) continue;
            best[mask] = std::min(best[mask], 1 + best[mask ^ sub]);
        }
    }
    if (best[full] >= kInf) throw InternalError("no finite coloring despite routable sources");
    return best[full];
}

}  // namespace gamred
