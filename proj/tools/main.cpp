#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gamred/coloring.hpp"
#include "gamred/errors.hpp"
#include "gamred/flow.hpp"
#include "gamred/generator.hpp"
#include "gamred/independence.hpp"
#include "gamred/report.hpp"
#include "gamred/verify.hpp"
#include "gamred/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gamred::Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool debug_assert_env() {
    const char* value = std::getenv("GAMRED_DEBUG_ASSERT");
    return value != nullptr && std::string(value) == "1";
}

gamred::ReduceOptions reduce_options(bool fast) {
    gamred::ReduceOptions opts;
    opts.check_tree_flow_each_step = !fast || debug_assert_env();
    return opts;
}

std::map<gamred::VertexId, std::vector<int>> parse_lists_file(const std::string& text) {
    std::map<gamred::VertexId, std::vector<int>> lists;
    gamred::Json doc;
    try {
        doc = gamred::Json::parse(text);
        for (const auto& [key, value] : doc.items()) {
            int elem = std::stoi(key);
            if (elem < 1) throw gamred::Error("list key must be a 1-based element id");
            lists[elem - 1] = value.get<std::vector<int>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw gamred::Error(std::string("bad lists JSON: ") + e.what());
    }
    return lists;
}

struct VerifyFlags {
    bool exhaustive = false;
    int samples = 10000;
    std::uint64_t seed = 1;
    long long budget = 100000;
};

gamred::WeakMapOptions weak_map_options(const VerifyFlags& flags) {
    gamred::WeakMapOptions opts;
    opts.samples = flags.samples;
    opts.seed = flags.seed;
    opts.exhaustive_budget = flags.exhaustive ? (1LL << 62) : flags.budget;
    return opts;
}

// reduce for one instance file; returns (json line, verification ok).
std::pair<gamred::Json, bool> reduce_one(const std::string& path, bool fast, bool verify,
                                         const VerifyFlags& flags, bool emit_flow,
                                         bool emit_trees, std::string* dumps) {
    auto original = gamred::parse_instance(read_file(path));
    auto [normalized, map] = gamred::normalize(original);
    auto run = gamred::run_reduction_pipeline(normalized, reduce_options(fast));

    gamred::Json doc = gamred::reduction_report(run.reduction);
    doc["instance"] = path;
    bool ok = true;
    if (verify) {
        auto partition_report = gamred::verify_partition(original, run.reduction);
        auto weak_map_report =
            gamred::verify_weak_map(original, run.reduction, weak_map_options(flags));
        doc["verification"] = gamred::Json::object();
        doc["verification"]["partition"] = gamred::verification_report(partition_report);
        doc["verification"]["weak_map"] = gamred::verification_report(weak_map_report);
        ok = partition_report.ok() && weak_map_report.ok();
    }
    if (dumps) {
        if (emit_flow) *dumps += gamred::flow_dump(run.padded, run.flow);
        if (emit_trees) *dumps += gamred::tree_dump(run.decomposition);
    }
    return {std::move(doc), ok};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gammoid-to-partition-matroid reduction toolkit"};
    app.set_version_flag("--version", gamred::kVersion);
    app.require_subcommand(1);

    // reduce
    auto* reduce_cmd = app.add_subcommand(
        "reduce", "Reduce gammoid instances to colorable partition matroids");
    std::vector<std::string> reduce_files;
    bool emit_flow = false, emit_trees = false, chain_verify = false, fast = false;
    int jobs = 1;
    VerifyFlags reduce_verify_flags;
    reduce_cmd->add_option("instance", reduce_files, "instance file(s)")->required();
    reduce_cmd->add_flag("--emit-flow", emit_flow, "dump the acyclic flow to stderr");
    reduce_cmd->add_flag("--emit-trees", emit_trees,
                         "dump trees, roles and highways to stderr");
    reduce_cmd->add_flag("--verify", chain_verify, "verify the reduction and fail nonzero");
    reduce_cmd->add_flag("--fast", fast, "skip per-step tree-flow checks");
    reduce_cmd->add_flag("--exhaustive", reduce_verify_flags.exhaustive,
                         "force exhaustive transversal verification");
    reduce_cmd->add_option("--samples", reduce_verify_flags.samples,
                           "sampled transversals when over budget");
    reduce_cmd->add_option("--seed", reduce_verify_flags.seed, "sampling seed");
    reduce_cmd->add_option("--jobs", jobs, "process instance files concurrently")
        ->check(CLI::Range(1, 64));

    // verify
    auto* verify_cmd =
        app.add_subcommand("verify", "Verify a reduction JSON against its instance");
    std::string verify_instance, verify_partition_path;
    VerifyFlags verify_flags;
    verify_cmd->add_option("instance", verify_instance, "instance file")->required();
    verify_cmd->add_option("partition", verify_partition_path, "reduction JSON file")->required();
    verify_cmd->add_flag("--exhaustive", verify_flags.exhaustive,
                         "check every maximal transversal");
    verify_cmd->add_option("--samples", verify_flags.samples, "sampled transversals");
    verify_cmd->add_option("--seed", verify_flags.seed, "sampling seed");
    verify_cmd->add_option("--budget", verify_flags.budget,
                           "exhaustive/sampled switch threshold");

    // color-number
    auto* colnum_cmd = app.add_subcommand("color-number", "Coloring number of a gammoid");
    std::string colnum_instance;
    colnum_cmd->add_option("instance", colnum_instance, "instance file")->required();

    // intersect
    auto* intersect_cmd = app.add_subcommand(
        "intersect", "Color the intersection of a gammoid and a partition matroid");
    std::string intersect_instance, intersect_m2;
    bool intersect_fast = false;
    intersect_cmd->add_option("instance", intersect_instance, "instance file")->required();
    intersect_cmd->add_option("matroid", intersect_m2, "partition matroid file")->required();
    intersect_cmd->add_flag("--fast", intersect_fast, "skip per-step tree-flow checks");

    // list-color
    auto* listcolor_cmd =
        app.add_subcommand("list-color", "List-color the intersection with per-element lists");
    std::string listcolor_instance, listcolor_m2, listcolor_lists;
    bool listcolor_fast = false;
    listcolor_cmd->add_option("instance", listcolor_instance, "instance file")->required();
    listcolor_cmd->add_option("matroid", listcolor_m2, "partition matroid file")->required();
    listcolor_cmd->add_option("lists", listcolor_lists, "JSON file: element id -> color list")
        ->required();
    listcolor_cmd->add_flag("--fast", listcolor_fast, "skip per-step tree-flow checks");

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random layered instance");
    gamred::GenParams params;
    int gen_vertices = 12, gen_edges = 16, gen_sources = 4, gen_sinks = 2, gen_layers = 3;
    std::uint64_t gen_seed = 1;
    std::string gen_output;
    gen_cmd->add_option("--vertices", gen_vertices, "vertex count");
    gen_cmd->add_option("--edges", gen_edges, "edge count");
    gen_cmd->add_option("--sources", gen_sources, "source count");
    gen_cmd->add_option("--sinks", gen_sinks, "sink count");
    gen_cmd->add_option("--layers", gen_layers, "hops from sources to sinks");
    gen_cmd->add_option("--seed", gen_seed, "generation seed");
    gen_cmd->add_option("-o,--output", gen_output, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (reduce_cmd->parsed()) {
            std::vector<std::pair<gamred::Json, bool>> results(reduce_files.size());
            std::vector<std::string> dumps(reduce_files.size());
            bool want_dumps = emit_flow || emit_trees;
            if (jobs <= 1 || reduce_files.size() <= 1) {
                for (size_t i = 0; i < reduce_files.size(); ++i)
                    results[i] = reduce_one(reduce_files[i], fast, chain_verify,
                                            reduce_verify_flags, emit_flow, emit_trees,
                                            want_dumps ? &dumps[i] : nullptr);
            } else {
                for (size_t start = 0; start < reduce_files.size();
                     start += static_cast<size_t>(jobs)) {
                    size_t end = std::min(reduce_files.size(), start + static_cast<size_t>(jobs));
                    std::vector<std::future<std::pair<gamred::Json, bool>>> batch;
                    for (size_t i = start; i < end; ++i) {
                        batch.push_back(std::async(std::launch::async, [&, i] {
                            return reduce_one(reduce_files[i], fast, chain_verify,
                                              reduce_verify_flags, emit_flow, emit_trees,
                                              want_dumps ? &dumps[i] : nullptr);
                        }));
                    }
                    for (size_t i = start; i < end; ++i) results[i] = batch[i - start].get();
                }
            }
            bool all_ok = true;
            for (size_t i = 0; i < reduce_files.size(); ++i) {
                std::cout << results[i].first.dump() << '\n';
                std::cerr << dumps[i];
                all_ok = all_ok && results[i].second;
            }
            return all_ok ? kExitOk : kExitVerifyFailed;
        }
        if (verify_cmd->parsed()) {
            auto inst = gamred::parse_instance(read_file(verify_instance));
            auto pr = gamred::reduction_from_report(
                gamred::Json::parse(read_file(verify_partition_path)));
            auto partition_report = gamred::verify_partition(inst, pr);
            auto weak_map_report =
                gamred::verify_weak_map(inst, pr, weak_map_options(verify_flags));
            gamred::Json doc;
            doc["version"] = gamred::kVersion;
            doc["instance"] = verify_instance;
            doc["partition"] = gamred::verification_report(partition_report);
            doc["weak_map"] = gamred::verification_report(weak_map_report);
            bool ok = partition_report.ok() && weak_map_report.ok();
            doc["ok"] = ok;
            std::cout << doc.dump() << '\n';
            return ok ? kExitOk : kExitVerifyFailed;
        }
        if (colnum_cmd->parsed()) {
            auto inst = gamred::parse_instance(read_file(colnum_instance));
            auto [normalized, map] = gamred::normalize(inst);
            gamred::Json doc;
            doc["version"] = gamred::kVersion;
            doc["instance"] = colnum_instance;
            doc["k"] = gamred::coloring_number(normalized);
            doc["rank"] = gamred::rank(normalized);
            doc["sources"] = normalized.sources.size();
            std::cout << doc.dump() << '\n';
            return kExitOk;
        }
        if (intersect_cmd->parsed()) {
            auto inst = gamred::parse_instance(read_file(intersect_instance));
            auto m2 = gamred::parse_partition_matroid(read_file(intersect_m2));
            auto coloring =
                gamred::intersection_color(inst, m2, reduce_options(intersect_fast));
            gamred::Json doc = gamred::coloring_report(coloring);
            doc["instance"] = intersect_instance;
            std::cout << doc.dump() << '\n';
            return kExitOk;
        }
        if (listcolor_cmd->parsed()) {
            auto inst = gamred::parse_instance(read_file(listcolor_instance));
            auto m2 = gamred::parse_partition_matroid(read_file(listcolor_m2));
            auto lists = parse_lists_file(read_file(listcolor_lists));
            auto coloring = gamred::list_color_intersection(inst, m2, lists,
                                                            reduce_options(listcolor_fast));
            gamred::Json doc = gamred::coloring_report(coloring);
            doc["instance"] = listcolor_instance;
            std::cout << doc.dump() << '\n';
            return kExitOk;
        }
        if (gen_cmd->parsed()) {
            params.n_vertices = gen_vertices;
            params.n_edges = gen_edges;
            params.n_sources = gen_sources;
            params.n_sinks = gen_sinks;
            params.layers = gen_layers;
            params.seed = gen_seed;
            auto inst = gamred::gen_random(params);
            std::string text = "# gamred gen seed=" + std::to_string(gen_seed) + "\n" +
                               gamred::serialize_instance(inst);
            if (gen_output.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(gen_output, std::ios::binary);
                if (!out) throw gamred::Error("cannot write " + gen_output);
                out << text;
            }
            return kExitOk;
        }
    } catch (const gamred::InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const gamred::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
