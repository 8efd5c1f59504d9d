#include "gamred/coloring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gamred/errors.hpp"
#include "gamred/independence.hpp"

namespace gamred {

int PartitionMatroid::max_part_size() const {
    int best = 0;
    for (const auto& part : parts) best = std::max(best, static_cast<int>(part.size()));
    return best;
}

bool PartitionMatroid::covers_exactly(const std::vector<VertexId>& universe) const {
    std::set<VertexId> expected(universe.begin(), universe.end());
    std::set<VertexId> seen;
    for (const auto& part : parts) {
        for (VertexId e : part) {
            if (!seen.insert(e).second || !expected.count(e)) return false;
        }
    }
    return seen.size() == expected.size();
}

PartitionMatroid parse_partition_matroid(const std::string& text) {
    PartitionMatroid m2;
    std::set<VertexId> seen;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        std::istringstream iss(line);
        std::string head;
        if (!(iss >> head) || head[0] == '#') continue;
        if (head != "x") throw ParseError(line_no, "expected part line 'x <elem> ...'");
        std::vector<VertexId> part;
        std::string tok;
        while (iss >> tok) {
            size_t pos = 0;
            int raw = 0;
            try {
                raw = std::stoi(tok, &pos);
            } catch (const std::exception&) {
                pos = std::string::npos;
            }
            if (pos != tok.size() || raw < 1)
                throw ParseError(line_no, "bad element id '" + tok + "'");
            VertexId elem = raw - 1;
            if (!seen.insert(elem).second)
                throw ParseError(line_no, "element " + tok + " appears in two parts");
            part.push_back(elem);
        }
        if (part.empty()) throw ParseError(line_no, "empty part");
        std::sort(part.begin(), part.end());
        m2.parts.push_back(std::move(part));
    }
    return m2;
}

int ElementBigraph::max_degree() const {
    std::vector<int> left_deg(left_count, 0), right_deg(right_count, 0);
    int best = 0;
    for (const auto& e : elements) {
        best = std::max(best, ++left_deg[e.left]);
        best = std::max(best, ++right_deg[e.right]);
    }
    return best;
}

ElementBigraph make_element_bigraph(const std::vector<std::vector<VertexId>>& left_parts,
                                    const PartitionMatroid& m2) {
    ElementBigraph g;
    g.left_count = static_cast<int>(left_parts.size());
    g.right_count = static_cast<int>(m2.parts.size());
    std::map<VertexId, int> left_of, right_of;
    for (int i = 0; i < g.left_count; ++i) {
        for (VertexId e : left_parts[i]) left_of[e] = i;
    }
    for (int i = 0; i < g.right_count; ++i) {
        for (VertexId e : m2.parts[i]) right_of[e] = i;
    }
    if (left_of.size() != right_of.size())
        throw UniverseMismatch("the two partitions cover different universes");
    for (const auto& [elem, left] : left_of) {
        auto it = right_of.find(elem);
        if (it == right_of.end())
            throw UniverseMismatch("element " + std::to_string(elem + 1) +
                                   " missing from the second partition");
        g.elements.push_back({elem, left, it->second});
    }
    return g;
}

int ColorAssignment::distinct_colors() const {
    std::set<int> seen;
    for (const auto& [_, c] : color_of) seen.insert(c);
    return static_cast<int>(seen.size());
}

std::vector<std::pair<int, std::vector<VertexId>>> ColorAssignment::classes() const {
    std::map<int, std::vector<VertexId>> by_color;
    for (const auto& [elem, c] : color_of) by_color[c].push_back(elem);
    std::vector<std::pair<int, std::vector<VertexId>>> out(by_color.begin(), by_color.end());
    return out;
}

bool classes_are_matchings(const ElementBigraph& g, const ColorAssignment& coloring) {
    std::set<std::pair<int, int>> used;  // (color, signed vertex key)
    for (const auto& e : g.elements) {
        auto it = coloring.color_of.find(e.id);
        if (it == coloring.color_of.end()) return false;
        if (!used.insert({it->second, e.left}).second) return false;
        if (!used.insert({it->second, -1 - e.right}).second) return false;
    }
    return true;
}

ColorAssignment konig_edge_color(const ElementBigraph& g) {
    ColorAssignment result;
    if (g.elements.empty()) return result;
    const int degree_bound = g.max_degree();

    // slot[side][vertex][color] = element index currently colored that way.
    std::vector<std::vector<int>> left_slot(g.left_count, std::vector<int>(degree_bound, -1));
    std::vector<std::vector<int>> right_slot(g.right_count, std::vector<int>(degree_bound, -1));
    std::vector<int> color(g.elements.size(), -1);

    auto first_free = [&](const std::vector<int>& slots) {
        for (int c = 0; c < static_cast<int>(slots.size()); ++c) {
            if (slots[c] < 0) return c;
        }
        throw InternalError("no free color at a vertex of degree <= max degree");
    };

    for (int idx = 0; idx < static_cast<int>(g.elements.size()); ++idx) {
        const auto& e = g.elements[idx];
        int a = first_free(left_slot[e.left]);
        int b = first_free(right_slot[e.right]);
        if (a != b) {
            // Swap colors a/b along the maximal alternating path from the
            // left endpoint; it can never reach the right endpoint, so b
            // becomes free on both sides.
            int cur_edge = left_slot[e.left][b];
            bool continue_left = false;  // side of the next hop
            std::vector<int> path;
            while (cur_edge >= 0) {
                path.push_back(cur_edge);
                const auto& pe = g.elements[cur_edge];
                int want = color[cur_edge] == a ? b : a;
                cur_edge = continue_left ? left_slot[pe.left][want] : right_slot[pe.right][want];
                continue_left = !continue_left;
            }
            for (int pe_idx : path) {
                const auto& pe = g.elements[pe_idx];
                int old_color = color[pe_idx];
                int new_color = old_color == a ? b : a;
                if (left_slot[pe.left][old_color] == pe_idx) left_slot[pe.left][old_color] = -1;
                if (right_slot[pe.right][old_color] == pe_idx) right_slot[pe.right][old_color] = -1;
                color[pe_idx] = new_color;
            }
            for (int pe_idx : path) {
                const auto& pe = g.elements[pe_idx];
                left_slot[pe.left][color[pe_idx]] = pe_idx;
                right_slot[pe.right][color[pe_idx]] = pe_idx;
            }
            a = b;
        }
        color[idx] = a;
        left_slot[e.left][a] = idx;
        right_slot[e.right][a] = idx;
    }

    for (int idx = 0; idx < static_cast<int>(g.elements.size()); ++idx)
        result.color_of[g.elements[idx].id] = color[idx];
    if (!classes_are_matchings(g, result))
        throw InternalError("edge coloring is not proper");
    if (result.distinct_colors() != degree_bound)
        throw InternalError("edge coloring missed the max-degree bound");
    return result;
}

namespace {

void require_lists_cover(const ElementBigraph& g,
                         const std::map<VertexId, std::vector<int>>& lists, int needed) {
    for (const auto& e : g.elements) {
        auto it = lists.find(e.id);
        int have = it == lists.end()
                       ? 0
                       : static_cast<int>(std::set<int>(it->second.begin(), it->second.end()).size());
        if (have < needed)
            throw ListTooSmall(e.id, "element " + std::to_string(e.id + 1) + " offers " +
                                         std::to_string(have) + " colors but " +
                                         std::to_string(needed) + " are required");
    }
}

}  // namespace

ColorAssignment galvin_list_color(const ElementBigraph& g,
                                  const std::map<VertexId, std::vector<int>>& lists) {
    ColorAssignment result;
    if (g.elements.empty()) return result;
    const int degree_bound = g.max_degree();
    require_lists_cover(g, lists, degree_bound);

    // Base coloring orders the stable-matching preferences: left endpoints
    // prefer higher base colors, right endpoints lower ones.
    ColorAssignment base = konig_edge_color(g);
    std::vector<int> base_color(g.elements.size());
    std::set<int> palette;
    for (int idx = 0; idx < static_cast<int>(g.elements.size()); ++idx) {
        base_color[idx] = base.color_of.at(g.elements[idx].id);
        const auto& list = lists.at(g.elements[idx].id);
        palette.insert(list.begin(), list.end());
    }

    std::vector<bool> colored(g.elements.size(), false);
    int remaining = static_cast<int>(g.elements.size());
    for (int wanted : palette) {
        if (remaining == 0) break;
        // Candidates: uncolored elements listing this color.
        std::vector<std::vector<int>> proposals(g.left_count);  // per left vertex, desc base color
        std::vector<int> candidates;
        for (int idx = 0; idx < static_cast<int>(g.elements.size()); ++idx) {
            if (colored[idx]) continue;
            const auto& list = lists.at(g.elements[idx].id);
            if (std::find(list.begin(), list.end(), wanted) == list.end()) continue;
            candidates.push_back(idx);
            proposals[g.elements[idx].left].push_back(idx);
        }
        if (candidates.empty()) continue;
        for (auto& row : proposals)
            std::sort(row.begin(), row.end(),
                      [&](int x, int y) { return base_color[x] > base_color[y]; });

        // Gale-Shapley over edges: a stable matching is a kernel of the
        // orientation induced by the base coloring.
        std::vector<size_t> next_proposal(g.left_count, 0);
        std::vector<int> right_match(g.right_count, -1);
        std::vector<int> work;
        for (int u = 0; u < g.left_count; ++u) {
            if (!proposals[u].empty()) work.push_back(u);
        }
        while (!work.empty()) {
            int u = work.back();
            work.pop_back();
            while (next_proposal[u] < proposals[u].size()) {
                int idx = proposals[u][next_proposal[u]++];
                int r = g.elements[idx].right;
                int held = right_match[r];
                if (held < 0) {
                    right_match[r] = idx;
                    break;
                }
                if (base_color[idx] < base_color[held]) {
                    right_match[r] = idx;
                    work.push_back(g.elements[held].left);
                    break;
                }
            }
        }
        for (int r = 0; r < g.right_count; ++r) {
            int idx = right_match[r];
            if (idx < 0) continue;
            colored[idx] = true;
            --remaining;
            result.color_of[g.elements[idx].id] = wanted;
        }
    }
    if (remaining != 0)
        throw InternalError("list coloring left elements uncolored despite sufficient lists");
    if (!classes_are_matchings(g, result))
        throw InternalError("list coloring produced a conflicting class");
    return result;
}

namespace {

IntersectionColoring color_intersection_impl(const GammoidInstance& inst,
                                             const PartitionMatroid& m2,
                                             const std::map<VertexId, std::vector<int>>* lists,
                                             const ReduceOptions& opts) {
    if (!m2.covers_exactly(inst.sources))
        throw UniverseMismatch("partition matroid universe differs from the instance's sources");

    auto [normalized, map] = normalize(inst);
    PartitionReduction pr = partition_reduction(normalized, opts);

    // Padding dummies are not elements of the application universe.
    std::set<VertexId> dummies(pr.dummy_sources.begin(), pr.dummy_sources.end());
    std::vector<std::vector<VertexId>> left_parts;
    for (const auto& part : pr.parts) {
        std::vector<VertexId> real;
        for (VertexId s : part) {
            if (!dummies.count(s)) real.push_back(s);
        }
        if (!real.empty()) left_parts.push_back(std::move(real));
    }

    ElementBigraph g = make_element_bigraph(left_parts, m2);
    IntersectionColoring out;
    out.k1 = pr.k;
    out.k2 = m2.max_part_size();
    out.assignment = lists ? galvin_list_color(g, *lists) : konig_edge_color(g);
    out.colors = out.assignment.distinct_colors();
    out.ratio = out.colors / static_cast<double>(std::max(1, std::max(out.k1, out.k2)));

    // Each class must be independent in both matroids.
    if (!classes_are_matchings(g, out.assignment))
        throw InternalError("intersection class meets a part twice");
    for (const auto& [color, members] : out.assignment.classes()) {
        if (!is_independent(inst, members))
            throw InternalError("intersection class for color " + std::to_string(color) +
                                " is dependent in the gammoid");
    }
    return out;
}

}  // namespace

IntersectionColoring intersection_color(const GammoidInstance& inst, const PartitionMatroid& m2,
                                        const ReduceOptions& opts) {
    return color_intersection_impl(inst, m2, nullptr, opts);
}

IntersectionColoring list_color_intersection(const GammoidInstance& inst,
                                             const PartitionMatroid& m2,
                                             const std::map<VertexId, std::vector<int>>& lists,
                                             const ReduceOptions& opts) {
    return color_intersection_impl(inst, m2, &lists, opts);
}

}  // namespace gamred
