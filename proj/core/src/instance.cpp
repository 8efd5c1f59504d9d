#include "gamred/instance.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gamred/errors.hpp"

namespace gamred {

void GammoidInstance::finalize() {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::sort(sources.begin(), sources.end());
    std::sort(sinks.begin(), sinks.end());
    if (dummy_flags.empty()) dummy_flags.assign(sources.size(), false);

    out_edges.assign(n, {});
    in_edges.assign(n, {});
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        out_edges[edges[e].first].push_back(e);
        in_edges[edges[e].second].push_back(e);
    }
    source_mark.assign(n, false);
    sink_mark.assign(n, false);
    for (VertexId s : sources) source_mark[s] = true;
    for (VertexId z : sinks) sink_mark[z] = true;
}

bool VertexMap::is_identity() const {
    for (int v = 0; v < static_cast<int>(forward.size()); ++v) {
        if (forward[v].size() != 1 || forward[v][0] != v) return false;
    }
    for (int v = 0; v < static_cast<int>(backward.size()); ++v) {
        if (backward[v] != v) return false;
    }
    return true;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

int parse_int(const std::string& tok, int line_no, const char* what) {
    size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line_no, std::string("expected integer ") + what + ", got '" + tok + "'");
    }
    if (pos != tok.size())
        throw ParseError(line_no, std::string("expected integer ") + what + ", got '" + tok + "'");
    return value;
}

}  // namespace

GammoidInstance parse_instance(const std::string& text) {
    GammoidInstance inst;
    bool got_header = false;
    int declared_edges = 0;
    int arc_lines = 0;
    std::set<VertexId> source_set, sink_set;

    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;

        if (!got_header) {
            if (toks[0] != "p")
                throw ParseError(line_no, "expected header 'p gammoid <n> <m>'");
            if (toks.size() != 4 || toks[1] != "gammoid")
                throw ParseError(line_no, "malformed header, want 'p gammoid <n> <m>'");
            inst.n = parse_int(toks[2], line_no, "<n>");
            declared_edges = parse_int(toks[3], line_no, "<m>");
            if (inst.n < 0 || declared_edges < 0)
                throw ParseError(line_no, "negative count in header");
            got_header = true;
            continue;
        }

        auto check_vertex = [&](const std::string& tok, const char* what) {
            int raw = parse_int(tok, line_no, what);
            if (raw < 1 || raw > inst.n)
                throw ParseError(line_no, "undeclared vertex " + std::to_string(raw));
            return raw - 1;  // to 0-based
        };

        if (toks[0] == "p") {
            throw ParseError(line_no, "duplicate header");
        } else if (toks[0] == "a") {
            if (toks.size() != 3) throw ParseError(line_no, "arc line wants 'a <u> <v>'");
            VertexId u = check_vertex(toks[1], "<u>");
            VertexId v = check_vertex(toks[2], "<v>");
            if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u + 1));
            inst.edges.emplace_back(u, v);
            ++arc_lines;
        } else if (toks[0] == "s") {
            if (toks.size() != 2) throw ParseError(line_no, "source line wants 's <v>'");
            VertexId v = check_vertex(toks[1], "<v>");
            if (sink_set.count(v))
                throw ParseError(line_no,
                                 "vertex " + std::to_string(v + 1) + " declared both source and sink");
            source_set.insert(v);
        } else if (toks[0] == "t") {
            if (toks.size() != 2) throw ParseError(line_no, "sink line wants 't <v>'");
            VertexId v = check_vertex(toks[1], "<v>");
            if (source_set.count(v))
                throw ParseError(line_no,
                                 "vertex " + std::to_string(v + 1) + " declared both source and sink");
            sink_set.insert(v);
        } else {
            throw ParseError(line_no, "unknown record '" + toks[0] + "'");
        }
    }
    if (!got_header) throw ParseError(line_no, "missing header");
    if (arc_lines != declared_edges)
        throw ParseError(line_no, "header declares " + std::to_string(declared_edges) +
                                      " arcs but file has " + std::to_string(arc_lines));

    inst.sources.assign(source_set.begin(), source_set.end());
    inst.sinks.assign(sink_set.begin(), sink_set.end());
    inst.finalize();
    return inst;
}

std::string serialize_instance(const GammoidInstance& inst) {
    std::ostringstream out;
    out << "p gammoid " << inst.n << ' ' << inst.edges.size() << '\n';
    for (const auto& [u, v] : inst.edges) out << "a " << u + 1 << ' ' << v + 1 << '\n';
    for (VertexId s : inst.sources) out << "s " << s + 1 << '\n';
    for (VertexId z : inst.sinks) out << "t " << z + 1 << '\n';
    return out.str();
}

bool is_normalized(const GammoidInstance& inst) {
    std::set<Edge> edge_set(inst.edges.begin(), inst.edges.end());
    for (const auto& [u, v] : inst.edges) {
        if (edge_set.count({v, u})) return false;
    }
    for (VertexId v = 0; v < inst.n; ++v) {
        if (inst.is_source(v)) {
            if (inst.in_degree(v) != 0 || inst.out_degree(v) != 1) return false;
        } else if (inst.is_sink(v)) {
            if (inst.in_degree(v) != 1 || inst.out_degree(v) != 0) return false;
        } else if (inst.in_degree(v) >= 2 && inst.out_degree(v) >= 2) {
            return false;
        }
    }
    return true;
}

std::pair<GammoidInstance, VertexMap> normalize(const GammoidInstance& inst) {
    if (inst.sources.empty()) throw InvalidInstance("instance has no sources");
    if (inst.sinks.empty()) throw InvalidInstance("instance has no sinks");

    int n = inst.n;
    std::set<Edge> edges(inst.edges.begin(), inst.edges.end());
    VertexMap map;
    map.forward.assign(n, {});
    map.backward.resize(n);
    for (VertexId v = 0; v < n; ++v) {
        map.forward[v] = {v};
        map.backward[v] = v;
    }
    auto fresh = [&](VertexId owner) {
        VertexId id = n++;
        map.forward[owner].push_back(id);
        map.backward.push_back(owner);
        return id;
    };

    // Step 1: subdivide the larger-tail edge of every antiparallel pair.
    {
        std::vector<Edge> pairs;
        for (const auto& [u, v] : edges) {
            if (u < v && edges.count({v, u})) pairs.emplace_back(v, u);
        }
        for (const auto& [u, v] : pairs) {  // subdivide (u, v), u > v
            VertexId w = fresh(u);
            edges.erase({u, v});
            edges.insert({u, w});
            edges.insert({w, v});
        }
    }

    // Helper: detach every edge of v onto a replacement vertex.
    auto move_edges = [&](VertexId v, VertexId onto) {
        std::vector<Edge> incident;
        for (const auto& e : edges) {
            if (e.first == v || e.second == v) incident.push_back(e);
        }
        for (const auto& e : incident) {
            edges.erase(e);
            edges.insert({e.first == v ? onto : e.first, e.second == v ? onto : e.second});
        }
    };

    auto degrees = [&](VertexId v) {
        int din = 0, dout = 0;
        for (const auto& e : edges) {
            if (e.first == v) ++dout;
            if (e.second == v) ++din;
        }
        return std::pair<int, int>(din, dout);
    };

    // Step 2: private successor for every nonconforming source.
    for (VertexId s : inst.sources) {
        auto [din, dout] = degrees(s);
        if (din == 0 && dout == 1) continue;
        VertexId o = fresh(s);
        move_edges(s, o);
        edges.insert({s, o});
    }

    // Step 3: private predecessor for every nonconforming sink.
    for (VertexId z : inst.sinks) {
        auto [din, dout] = degrees(z);
        if (din == 1 && dout == 0) continue;
        VertexId g = fresh(z);
        move_edges(z, g);
        edges.insert({g, z});
    }

    // Step 4: split any remaining vertex with in-degree >= 2 and out-degree >= 2.
    // Fresh vertices are appended and re-checked as v sweeps upward.
    for (VertexId v = 0; v < n; ++v) {
        auto [din, dout] = degrees(v);
        if (din < 2 || dout < 2) continue;
        VertexId o = fresh(map.backward[v]);
        std::vector<Edge> outgoing;
        for (const auto& e : edges) {
            if (e.first == v) outgoing.push_back(e);
        }
        for (const auto& e : outgoing) {
            edges.erase(e);
            edges.insert({o, e.second});
        }
        edges.insert({v, o});
    }

    GammoidInstance out;
    out.n = n;
    out.edges.assign(edges.begin(), edges.end());
    out.sources = inst.sources;
    out.sinks = inst.sinks;
    out.dummy_flags = inst.dummy_flags;
    out.finalize();
    if (!is_normalized(out)) throw InternalError("normalize produced a nonconforming instance");
    return {std::move(out), std::move(map)};
}

}  // namespace gamred
