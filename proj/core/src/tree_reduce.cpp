#include "gamred/tree_reduce.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "gamred/errors.hpp"
#include "gamred/max_flow.hpp"

namespace gamred {

void TreeState::add_vertex(VertexId v, VertexRole role) {
    roles[v] = role;
    out.try_emplace(v);
    in.try_emplace(v);
}

void TreeState::add_edge(VertexId a, VertexId b) {
    if (!contains(a) || !contains(b)) throw InternalError("tree edge endpoint missing");
    out[a].insert(b);
    in[b].insert(a);
}

void TreeState::detach(VertexId v) {
    for (VertexId w : out.at(v)) in.at(w).erase(v);
    for (VertexId w : in.at(v)) out.at(w).erase(v);
    out.at(v).clear();
    in.at(v).clear();
}

void TreeState::remove_vertex(VertexId v) {
    detach(v);
    out.erase(v);
    in.erase(v);
    roles.erase(v);
    virtual_vertices.erase(v);
}

std::vector<VertexId> TreeState::vertices() const {
    std::vector<VertexId> out_list;
    out_list.reserve(roles.size());
    for (const auto& [v, _] : roles) out_list.push_back(v);
    return out_list;
}

std::vector<VertexId> TreeState::source_list() const {
    std::vector<VertexId> list;
    for (const auto& [v, role] : roles) {
        if (role == VertexRole::Source) list.push_back(v);
    }
    return list;
}

std::vector<VertexId> TreeState::neighbors(VertexId v) const {
    std::vector<VertexId> list(out.at(v).begin(), out.at(v).end());
    list.insert(list.end(), in.at(v).begin(), in.at(v).end());
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    return list;
}

int TreeState::count_role(VertexRole role) const {
    int count = 0;
    for (const auto& [_, r] : roles) count += (r == role);
    return count;
}

TreeState tree_state_from(const GammoidInstance& inst, const TreeDecomposition& dec,
                          int tree_index) {
    const auto& tree = dec.trees[tree_index];
    TreeState t;
    t.k = 0;
    for (VertexId v : tree.vertices) {
        if (dec.roles[v] == VertexRole::Sink)
            throw InternalError("sink inside a nontrivial tree");
        t.add_vertex(v, dec.roles[v]);
    }
    for (int e : tree.edge_ids) t.add_edge(inst.edges[e].first, inst.edges[e].second);
    t.next_fresh_id = inst.n;
    return t;
}

const char* case_name(CaseTag tag) {
    switch (tag) {
        case CaseTag::BaseA: return "base_a";
        case CaseTag::BaseB: return "base_b";
        case CaseTag::Case1a: return "case_1a";
        case CaseTag::Case1b: return "case_1b";
        case CaseTag::Case2a: return "case_2a";
        case CaseTag::Case2b: return "case_2b";
        case CaseTag::Case2c: return "case_2c";
        case CaseTag::Case3a: return "case_3a";
        case CaseTag::Case3b: return "case_3b";
    }
    return "?";
}

int BackboneView::out_degree(VertexId v) const {
    int deg = 0;
    for (const auto& [a, b] : edges) deg += (a == v);
    return deg;
}

namespace {

int undirected_backbone_degree(const BackboneView& b, VertexId v) {
    int deg = 0;
    for (const auto& [a, c] : b.edges) deg += (a == v) + (c == v);
    return deg;
}

}  // namespace

BackboneView backbone(const TreeState& t) {
    BackboneView b;
    std::vector<VertexId> portals;
    for (const auto& [v, role] : t.roles) {
        if (role == VertexRole::SinkPortal) portals.push_back(v);
    }
    b.sink_portal_count = static_cast<int>(portals.size());
    if (portals.empty()) return b;

    // Root at one portal; an edge is on a portal-portal path iff both of its
    // sides contain a portal.
    VertexId root = portals[0];
    std::map<VertexId, VertexId> parent;
    std::vector<VertexId> order;
    parent[root] = root;
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (VertexId w : t.neighbors(v)) {
            if (!parent.count(w)) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    if (order.size() != t.roles.size()) throw InternalError("tree is not connected");

    std::map<VertexId, int> subtree_portals;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        VertexId v = *it;
        int count = (t.roles.at(v) == VertexRole::SinkPortal) ? 1 : 0;
        count += subtree_portals[v];  // children already accumulated
        subtree_portals[v] = count;
        if (v != root) subtree_portals[parent[v]] += count;
    }
    const int total = b.sink_portal_count;
    for (VertexId v : order) {
        if (v == root) continue;
        int below = subtree_portals[v];
        if (below >= 1 && below <= total - 1) {
            VertexId p = parent[v];
            if (t.out.at(v).count(p))
                b.edges.insert({v, p});
            else
                b.edges.insert({p, v});
        }
    }
    for (VertexId z : portals) b.vertices.insert(z);
    for (const auto& [a, c] : b.edges) {
        b.vertices.insert(a);
        b.vertices.insert(c);
    }

    // Branching vertices: deleting v from B must leave enough components that
    // contain exactly one sink portal (two for ordinary v, one if v is itself
    // a sink portal).
    std::map<VertexId, std::vector<VertexId>> b_adj;
    for (const auto& [a, c] : b.edges) {
        b_adj[a].push_back(c);
        b_adj[c].push_back(a);
    }
    for (VertexId v : b.vertices) {
        int single_portal_components = 0;
        std::set<VertexId> seen{v};
        for (VertexId start : b_adj[v]) {
            if (seen.count(start)) continue;
            int portal_count = 0;
            std::deque<VertexId> comp_queue{start};
            seen.insert(start);
            while (!comp_queue.empty()) {
                VertexId u = comp_queue.front();
                comp_queue.pop_front();
                if (t.roles.at(u) == VertexRole::SinkPortal) ++portal_count;
                for (VertexId w : b_adj[u]) {
                    if (!seen.count(w)) {
                        seen.insert(w);
                        comp_queue.push_back(w);
                    }
                }
            }
            if (portal_count == 1) ++single_portal_components;
        }
        bool is_portal = t.roles.at(v) == VertexRole::SinkPortal;
        if (single_portal_components >= (is_portal ? 1 : 2)) b.branching.push_back(v);
    }

    // Hanging trees: components of T minus backbone edges. Each one touches
    // the backbone in exactly one vertex, its contact.
    std::set<VertexId> claimed;
    for (VertexId w : b.vertices) {
        std::vector<VertexId> hang_sources;
        std::deque<VertexId> hang_queue{w};
        std::set<VertexId> local{w};
        while (!hang_queue.empty()) {
            VertexId u = hang_queue.front();
            hang_queue.pop_front();
            for (VertexId x : t.neighbors(u)) {
                bool backbone_edge = b.edges.count({u, x}) || b.edges.count({x, u});
                if (backbone_edge || local.count(x)) continue;
                if (b.vertices.count(x))
                    throw InternalError("hanging tree touches the backbone twice");
                local.insert(x);
                if (claimed.count(x)) throw InternalError("hanging tree with two contacts");
                claimed.insert(x);
                hang_queue.push_back(x);
                VertexRole role = t.roles.at(x);
                if (role == VertexRole::Source)
                    hang_sources.push_back(x);
                else if (role != VertexRole::Normal && total >= 2)
                    throw InternalError("portal inside a hanging tree");
            }
        }
        std::sort(hang_sources.begin(), hang_sources.end());
        b.hanging_sources[w] = std::move(hang_sources);
    }

    // Sources never lie on the backbone; source portals lie on it with
    // out-degree at least 2 (meaningful once two portals exist).
    for (VertexId v : b.vertices) {
        if (t.roles.at(v) == VertexRole::Source)
            throw InternalError("source on the backbone");
    }
    if (total >= 2) {
        for (const auto& [v, role] : t.roles) {
            if (role != VertexRole::SourcePortal) continue;
            if (!b.vertices.count(v) || b.out_degree(v) < 2)
                throw InternalError("source portal off the backbone or with out-degree < 2");
        }
    }
    return b;
}

bool hanging_edges_point_to_backbone(const TreeState& t, const BackboneView& b) {
    if (b.vertices.empty()) return true;
    for (VertexId w : b.vertices) {
        // BFS distances from the contact across non-backbone edges.
        std::map<VertexId, int> dist{{w, 0}};
        std::deque<VertexId> queue{w};
        while (!queue.empty()) {
            VertexId u = queue.front();
            queue.pop_front();
            for (VertexId x : t.neighbors(u)) {
                bool backbone_edge = b.edges.count({u, x}) || b.edges.count({x, u});
                if (backbone_edge || dist.count(x) || b.vertices.count(x)) continue;
                dist[x] = dist[u] + 1;
                queue.push_back(x);
            }
        }
        for (const auto& [u, du] : dist) {
            if (u == w) continue;
            for (VertexId x : t.out.at(u)) {
                auto it = dist.find(x);
                if (it == dist.end() || it->second != du - 1) return false;
            }
            if (t.out.at(u).empty()) return false;  // hanging vertex with no way out
        }
    }
    return true;
}

namespace {

struct Component {
    std::vector<VertexId> vertices;
    std::vector<VertexId> portals;
    std::vector<VertexId> sources;
};

// Connected components of T - v, one per neighbor of v.
std::vector<Component> components_without(const TreeState& t, VertexId v) {
    std::vector<Component> comps;
    std::set<VertexId> seen{v};
    for (VertexId start : t.neighbors(v)) {
        if (seen.count(start)) continue;
        Component comp;
        std::deque<VertexId> queue{start};
        seen.insert(start);
        while (!queue.empty()) {
            VertexId u = queue.front();
            queue.pop_front();
            comp.vertices.push_back(u);
            VertexRole role = t.roles.at(u);
            if (role == VertexRole::SinkPortal) comp.portals.push_back(u);
            if (role == VertexRole::Source) comp.sources.push_back(u);
            for (VertexId w : t.neighbors(u)) {
                if (!seen.count(w)) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        std::sort(comp.vertices.begin(), comp.vertices.end());
        std::sort(comp.portals.begin(), comp.portals.end());
        std::sort(comp.sources.begin(), comp.sources.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Unique tree path from a to z as a vertex sequence.
std::vector<VertexId> tree_path(const TreeState& t, VertexId a, VertexId z) {
    std::map<VertexId, VertexId> parent{{a, a}};
    std::deque<VertexId> queue{a};
    while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop_front();
        if (u == z) break;
        for (VertexId w : t.neighbors(u)) {
            if (!parent.count(w)) {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    if (!parent.count(z)) throw InternalError("tree path endpoint unreachable");
    std::vector<VertexId> path;
    for (VertexId u = z;; u = parent[u]) {
        path.push_back(u);
        if (u == a) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<VertexId> hanging_union(const BackboneView& b, const std::vector<VertexId>& path,
                                    size_t from, size_t to_inclusive) {
    std::vector<VertexId> result;
    for (size_t j = from; j <= to_inclusive && j < path.size(); ++j) {
        auto it = b.hanging_sources.find(path[j]);
        if (it != b.hanging_sources.end())
            result.insert(result.end(), it->second.begin(), it->second.end());
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::string dump_state(const TreeState& t) {
    std::ostringstream os;
    os << "k=" << t.k << " vertices:";
    for (const auto& [v, role] : t.roles) os << ' ' << v << role_letter(role);
    os << " edges:";
    for (const auto& [v, outs] : t.out) {
        for (VertexId w : outs) os << " (" << v << ',' << w << ')';
    }
    return os.str();
}

}  // namespace

CaseSelection resolve_case(const TreeState& t, const BackboneView& b) {
    const int k = t.k;
    CaseSelection sel;

    std::vector<VertexId> sources = t.source_list();
    if (sources.empty()) {
        sel.tag = CaseTag::BaseA;
        return sel;
    }
    if (static_cast<int>(sources.size()) <= 2 * k - 2 &&
        t.count_role(VertexRole::SourcePortal) == 0) {
        sel.tag = CaseTag::BaseB;
        sel.part = sources;
        return sel;
    }

    // Neither base case: at least two sink portals and a branching vertex
    // must exist.
    if (b.sink_portal_count < 2)
        throw InternalError("recursive step on a tree with fewer than two sink portals: " +
                            dump_state(t));
    if (b.branching.empty())
        throw InternalError("no branching vertex found: " + dump_state(t));
    sel.v = b.branching.front();
    const bool v_is_sink_portal = t.roles.at(sel.v) == VertexRole::SinkPortal;

    auto comps = components_without(t, sel.v);
    std::vector<const Component*> single;
    for (const auto& comp : comps) {
        if (comp.portals.size() == 1) single.push_back(&comp);
    }
    std::sort(single.begin(), single.end(),
              [](const Component* a, const Component* c) { return a->portals[0] < c->portals[0]; });
    if (single.empty() || (!v_is_sink_portal && single.size() < 2))
        throw InternalError("branching vertex lacks single-portal subtrees: " + dump_state(t));

    const Component* t1 = single[0];
    const Component* t2 = v_is_sink_portal ? nullptr : single[1];
    sel.z1 = t1->portals[0];
    sel.z2 = v_is_sink_portal ? sel.v : t2->portals[0];
    sel.t1_vertices = t1->vertices;
    if (t2) sel.t2_vertices = t2->vertices;

    if (t.roles.at(sel.v) == VertexRole::SourcePortal) {
        sel.tag = CaseTag::Case1a;
        sel.i = 1;
        return sel;
    }

    struct PathInfo {
        std::vector<VertexId> path;
        const Component* comp;
        VertexId portal;
        VertexId y = -1;
        bool has_portal = false;
    };
    std::vector<PathInfo> paths;
    paths.push_back({tree_path(t, sel.v, sel.z1), t1, sel.z1});
    if (t2) paths.push_back({tree_path(t, sel.v, sel.z2), t2, sel.z2});

    for (auto& info : paths) {
        int degree_two_seen = 0;
        for (size_t j = 1; j < info.path.size(); ++j) {
            VertexId w = info.path[j];
            int expected_degree = (w == info.portal) ? 1 : 2;
            if (undirected_backbone_degree(b, w) != expected_degree)
                throw InternalError("single-portal path vertex with unexpected backbone degree: " +
                                    dump_state(t));
            bool is_source_portal = t.roles.at(w) == VertexRole::SourcePortal;
            if (is_source_portal) {
                info.has_portal = true;
                if (b.out_degree(w) != 2)
                    throw InternalError("source portal on path without out-degree 2: " +
                                        dump_state(t));
            }
            if (b.out_degree(w) == 2) {
                ++degree_two_seen;
                info.y = w;
            }
        }
        if (degree_two_seen > 1)
            throw InternalError("more than one out-degree-2 vertex on a single-portal path: " +
                                dump_state(t));
    }

    // Case 1b: a source portal on one of the paths.
    for (size_t idx = 0; idx < paths.size(); ++idx) {
        if (paths[idx].has_portal) {
            sel.tag = CaseTag::Case1b;
            sel.i = static_cast<int>(idx) + 1;
            return sel;
        }
    }

    // Cases 2a-2c: an out-degree-2 vertex y on one of the paths.
    auto y_index = [](const PathInfo& info) {
        for (size_t j = 1; j < info.path.size(); ++j) {
            if (info.path[j] == info.y) return j;
        }
        throw InternalError("y not on its path");
    };
    bool any_y = false;
    for (const auto& info : paths) any_y |= info.y >= 0;
    if (any_y) {
        for (size_t idx = 0; idx < paths.size(); ++idx) {
            const auto& info = paths[idx];
            if (info.y < 0) continue;
            auto part = hanging_union(b, info.path, y_index(info), info.path.size() - 1);
            if (static_cast<int>(part.size()) <= 2 * k - 2) {
                sel.tag = CaseTag::Case2a;
                sel.i = static_cast<int>(idx) + 1;
                sel.y = info.y;
                sel.part = std::move(part);
                return sel;
            }
        }
        for (size_t idx = 0; idx < paths.size(); ++idx) {
            const auto& info = paths[idx];
            if (info.y < 0) continue;
            auto part = hanging_union(b, info.path, y_index(info), y_index(info));
            if (static_cast<int>(part.size()) == k) {
                sel.tag = CaseTag::Case2b;
                sel.i = static_cast<int>(idx) + 1;
                sel.y = info.y;
                sel.part = std::move(part);
                return sel;
            }
        }
        for (size_t idx = 0; idx < paths.size(); ++idx) {
            const auto& info = paths[idx];
            if (info.y < 0) continue;
            auto part = hanging_union(b, info.path, y_index(info) + 1, info.path.size() - 1);
            if (static_cast<int>(part.size()) == k) {
                sel.tag = CaseTag::Case2c;
                sel.i = static_cast<int>(idx) + 1;
                sel.y = info.y;
                sel.part = std::move(part);
                return sel;
            }
        }
        // |S(y)| <= k and |S(P \ y)| <= k by feasibility, so one of the three
        // subcases had to fire once |S(P)| exceeded 2k-2.
        throw InternalError("case-2 arithmetic gap: " + dump_state(t));
    }

    // Case 3: no source portal, no out-degree-2 vertex. Each path must run
    // from v toward its portal, and v cannot be a sink portal.
    for (const auto& info : paths) {
        for (size_t j = 0; j + 1 < info.path.size(); ++j) {
            if (!t.out.at(info.path[j]).count(info.path[j + 1]))
                throw InternalError("single-portal path not directed toward its portal: " +
                                    dump_state(t));
        }
    }
    if (v_is_sink_portal)
        throw InternalError("case 3 reached with a sink-portal branching vertex: " + dump_state(t));

    for (size_t idx = 0; idx < paths.size(); ++idx) {
        if (static_cast<int>(paths[idx].comp->sources.size()) == k) {
            sel.tag = CaseTag::Case3a;
            sel.i = static_cast<int>(idx) + 1;
            sel.part = paths[idx].comp->sources;
            return sel;
        }
    }

    if (static_cast<int>(t1->sources.size()) >= k || static_cast<int>(t2->sources.size()) >= k)
        throw InternalError("case 3b with a subtree of k or more sources: " + dump_state(t));
    sel.tag = CaseTag::Case3b;
    sel.i = 0;
    sel.part = t1->sources;
    sel.part.insert(sel.part.end(), t2->sources.begin(), t2->sources.end());
    std::sort(sel.part.begin(), sel.part.end());
    return sel;
}

CaseTag select_case(const TreeState& t, const BackboneView& b) { return resolve_case(t, b).tag; }

namespace {

ApplyResult apply_selection(TreeState& t, const CaseSelection& sel) {
    switch (sel.tag) {
        case CaseTag::BaseA:
            return {true, {}};
        case CaseTag::BaseB:
            return {true, sel.part};
        default:
            break;
    }

    const auto& comp = (sel.i == 2) ? sel.t2_vertices
                                    : sel.t1_vertices;  // case 3b handles both below
    std::set<VertexId> emitted(sel.part.begin(), sel.part.end());

    switch (sel.tag) {
        case CaseTag::Case1a: {
            for (VertexId w : comp) {
                if (t.roles.at(w) == VertexRole::Source) {
                    t.detach(w);
                    t.add_edge(w, sel.v);
                }
            }
            for (VertexId w : comp) {
                if (t.roles.at(w) != VertexRole::Source) t.remove_vertex(w);
            }
            t.roles.at(sel.v) = VertexRole::Normal;
            return {false, {}};
        }
        case CaseTag::Case1b:
        case CaseTag::Case2a:
        case CaseTag::Case2b:
        case CaseTag::Case2c: {
            for (VertexId w : comp) {
                if (t.roles.at(w) == VertexRole::Source && !emitted.count(w)) {
                    t.detach(w);
                    t.add_edge(w, sel.v);
                }
            }
            for (VertexId w : comp) {
                if (t.roles.at(w) != VertexRole::Source || emitted.count(w)) t.remove_vertex(w);
            }
            return {false, sel.part};
        }
        case CaseTag::Case3a: {
            for (VertexId w : comp) t.remove_vertex(w);
            return {false, sel.part};
        }
        case CaseTag::Case3b: {
            for (VertexId w : sel.t1_vertices) t.remove_vertex(w);
            for (VertexId w : sel.t2_vertices) t.remove_vertex(w);
            VertexId fresh = t.next_fresh_id++;
            t.add_vertex(fresh, VertexRole::SinkPortal);
            t.virtual_vertices.insert(fresh);
            t.add_edge(sel.v, fresh);
            return {false, sel.part};
        }
        default:
            throw InternalError("unhandled case tag");
    }
}

bool is_connected(const TreeState& t) {
    if (t.roles.empty()) return true;
    std::set<VertexId> seen{t.roles.begin()->first};
    std::deque<VertexId> queue{t.roles.begin()->first};
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (VertexId w : t.neighbors(v)) {
            if (!seen.count(w)) {
                seen.insert(w);
                queue.push_back(w);
            }
        }
    }
    return seen.size() == t.roles.size();
}

}  // namespace

ApplyResult apply_case(TreeState& t, CaseTag tag, const BackboneView& b) {
    CaseSelection sel = resolve_case(t, b);
    if (sel.tag != tag)
        throw InternalError(std::string("apply_case tag mismatch: resolved ") +
                            case_name(sel.tag) + ", got " + case_name(tag));
    return apply_selection(t, sel);
}

bool check_tree_flow(const TreeState& t) {
    const int k = t.k;
    std::map<VertexId, int> index;
    int next = 0;
    for (const auto& [v, _] : t.roles) index[v] = next++;
    const int n = next;
    MaxFlowNetwork net(2 * n + 2);
    const int super_source = 2 * n, super_sink = 2 * n + 1;
    auto in_node = [&](VertexId v) { return 2 * index.at(v); };
    auto out_node = [&](VertexId v) { return 2 * index.at(v) + 1; };

    long long demand = 0;
    for (const auto& [v, role] : t.roles) {
        net.add_arc(in_node(v), out_node(v), k);
        switch (role) {
            case VertexRole::Source:
                net.add_arc(super_source, in_node(v), 1);
                demand += 1;
                break;
            case VertexRole::SourcePortal:
                net.add_arc(super_source, in_node(v), k);
                demand += k;
                break;
            case VertexRole::SinkPortal:
                net.add_arc(out_node(v), super_sink, k);
                break;
            default:
                break;
        }
    }
    for (const auto& [v, outs] : t.out) {
        for (VertexId w : outs) net.add_arc(out_node(v), in_node(w), k);
    }
    return net.max_flow(super_source, super_sink) == demand;
}

ReduceTreeResult reduce_tree(TreeState t, const ReduceTreeOptions& opts) {
    ReduceTreeResult result;
    const std::vector<VertexId> expected_sources = t.source_list();
    const int initial_portals = t.count_role(VertexRole::SinkPortal);
    const int part_bound = std::max(1, 2 * t.k - 2);

    if (opts.check_flow_each_step && !check_tree_flow(t))
        throw InternalError("no feasible tree flow on entry: " + dump_state(t));

    bool first = true;
    while (true) {
        BackboneView b = backbone(t);
        if (first) {
            if (!hanging_edges_point_to_backbone(t, b))
                throw InternalError("hanging edges not directed toward the backbone: " +
                                    dump_state(t));
            first = false;
        }
        CaseSelection sel = resolve_case(t, b);
        ++result.case_counts[sel.tag];
        ApplyResult applied = apply_selection(t, sel);
        if (!applied.part.empty()) {
            if (static_cast<int>(applied.part.size()) > part_bound)
                throw InternalError("emitted part larger than the bound");
            result.parts.push_back(applied.part);
        }
        if (applied.done) break;
        ++result.steps;
        if (result.steps > initial_portals + 1)
            throw InternalError("tree recursion failed to make progress");
        if (!is_connected(t)) throw InternalError("tree disconnected after " +
                                                  std::string(case_name(sel.tag)));
        if (opts.check_flow_each_step && !check_tree_flow(t))
            throw InternalError("feasible tree flow lost after " +
                                std::string(case_name(sel.tag)) + ": " + dump_state(t));
    }

    std::vector<VertexId> covered;
    for (const auto& part : result.parts) covered.insert(covered.end(), part.begin(), part.end());
    std::sort(covered.begin(), covered.end());
    if (covered != expected_sources)
        throw InternalError("parts do not partition the tree's sources");
    return result;
}

}  // namespace gamred
