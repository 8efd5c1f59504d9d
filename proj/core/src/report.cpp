#include "gamred/report.hpp"

#include <sstream>

#include "gamred/errors.hpp"
#include "gamred/version.hpp"

namespace gamred {

namespace {

Json ids_to_json(const std::vector<VertexId>& ids) {
    Json arr = Json::array();
    for (VertexId v : ids) arr.push_back(v + 1);
    return arr;
}

std::vector<VertexId> ids_from_json(const Json& arr) {
    std::vector<VertexId> ids;
    for (const auto& v : arr) ids.push_back(v.get<int>() - 1);
    return ids;
}

}  // namespace

Json reduction_report(const PartitionReduction& pr) {
    Json doc;
    doc["version"] = kVersion;
    doc["k"] = pr.k;
    doc["bound"] = pr.bound;
    Json parts = Json::array();
    for (const auto& part : pr.parts) parts.push_back(ids_to_json(part));
    doc["parts"] = std::move(parts);
    doc["dummy_sources"] = ids_to_json(pr.dummy_sources);
    Json stats;
    Json cases;
    for (const auto& [name, count] : pr.stats.case_counts) cases[name] = count;
    stats["case_counts"] = std::move(cases);
    stats["max_part_size"] = pr.stats.max_part_size;
    stats["trees"] = pr.stats.trees;
    stats["highways"] = pr.stats.highways;
    stats["cancel_iterations"] = pr.stats.cancel_iterations;
    doc["stats"] = std::move(stats);
    return doc;
}

PartitionReduction reduction_from_report(const Json& doc) {
    PartitionReduction pr;
    try {
        pr.k = doc.at("k").get<int>();
        pr.bound = doc.at("bound").get<int>();
        for (const auto& part : doc.at("parts")) pr.parts.push_back(ids_from_json(part));
        pr.dummy_sources = ids_from_json(doc.at("dummy_sources"));
        if (doc.contains("stats")) {
            const auto& stats = doc.at("stats");
            pr.stats.max_part_size = stats.value("max_part_size", 0);
            pr.stats.trees = stats.value("trees", 0);
            pr.stats.highways = stats.value("highways", 0);
            pr.stats.cancel_iterations = stats.value("cancel_iterations", 0);
            if (stats.contains("case_counts")) {
                for (const auto& [name, count] : stats.at("case_counts").items())
                    pr.stats.case_counts[name] = count.get<int>();
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInstance(std::string("bad reduction JSON: ") + e.what());
    }
    return pr;
}

Json verification_report(const VerificationReport& report) {
    Json doc;
    doc["version"] = kVersion;
    doc["ok"] = report.ok();
    doc["partition_ok"] = report.partition_ok;
    doc["sizes_ok"] = report.sizes_ok;
    doc["transversals_checked"] = report.transversals_checked;
    doc["mode"] = report.exhaustive ? "exhaustive" : "sampled";
    doc["seed"] = report.seed;
    doc["failure_count"] = report.failure_count;
    Json failures = Json::array();
    for (const auto& failure : report.failures) {
        Json f;
        f["transversal"] = ids_to_json(failure.transversal);
        f["reason"] = failure.reason;
        failures.push_back(std::move(f));
    }
    doc["failures"] = std::move(failures);
    return doc;
}

Json coloring_report(const IntersectionColoring& coloring) {
    Json doc;
    doc["version"] = kVersion;
    doc["colors"] = coloring.colors;
    doc["k1"] = coloring.k1;
    doc["k2"] = coloring.k2;
    doc["ratio"] = coloring.ratio;
    Json classes = Json::array();
    for (const auto& [color, members] : coloring.assignment.classes()) {
        Json cls;
        cls["color"] = color;
        cls["elements"] = ids_to_json(members);
        classes.push_back(std::move(cls));
    }
    doc["classes"] = std::move(classes);
    return doc;
}

std::string flow_dump(const GammoidInstance& inst, const FlowState& f) {
    std::ostringstream os;
    for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e) {
        os << "f " << inst.edges[e].first + 1 << ' ' << inst.edges[e].second + 1 << ' '
           << f.edge_flow[e] << '\n';
    }
    return os.str();
}

std::string tree_dump(const TreeDecomposition& dec) {
    std::ostringstream os;
    for (size_t i = 0; i < dec.trees.size(); ++i) {
        os << "tree " << i << ':';
        for (VertexId v : dec.trees[i].vertices) os << ' ' << v + 1 << role_letter(dec.roles[v]);
        os << '\n';
    }
    for (size_t i = 0; i < dec.highways.size(); ++i) {
        os << "highway " << i << ':';
        for (VertexId v : dec.highways[i]) os << ' ' << v + 1;
        os << '\n';
    }
    return os.str();
}

}  // namespace gamred
