#pragma once

#include <map>
#include <string>
#include <vector>

#include "gamred/instance.hpp"
#include "gamred/reduce.hpp"

namespace gamred {

// Partition matroid with per-part capacity 1: a set is independent iff it
// meets every part at most once. Parts are disjoint and cover the universe.
struct PartitionMatroid {
    std::vector<std::vector<VertexId>> parts;

    int max_part_size() const;
    bool covers_exactly(const std::vector<VertexId>& universe) const;
};

// Text format: one part per line, "x <elem> <elem> ...", '#' comments.
PartitionMatroid parse_partition_matroid(const std::string& text);

// Bipartite multigraph encoding of two capacity-1 partition matroids over a
// common universe: left vertices are parts of the first, right vertices parts
// of the second, and every element is the edge joining its two parts.
// Independent sets in the intersection are exactly the matchings.
struct ElementBigraph {
    struct Element {
        VertexId id;
        int left;
        int right;
    };
    int left_count = 0;
    int right_count = 0;
    std::vector<Element> elements;  // ascending by id

    int max_degree() const;
};

ElementBigraph make_element_bigraph(const std::vector<std::vector<VertexId>>& left_parts,
                                    const PartitionMatroid& m2);

// Element -> color. Classes with the same color form matchings in the bigraph.
struct ColorAssignment {
    std::map<VertexId, int> color_of;

    int distinct_colors() const;
    // (color, elements) pairs, ascending by color.
    std::vector<std::pair<int, std::vector<VertexId>>> classes() const;
};

// Proper edge coloring of the bipartite multigraph with exactly max_degree
// colors 0..D-1 (the bipartite edge-chromatic number).
ColorAssignment konig_edge_color(const ElementBigraph& g);

// Proper edge coloring where every edge takes a color from its own list;
// succeeds whenever every list has at least max_degree colors (kernel/stable-
// matching method on top of a base coloring). Throws ListTooSmall otherwise.
ColorAssignment galvin_list_color(const ElementBigraph& g,
                                  const std::map<VertexId, std::vector<int>>& lists);

bool classes_are_matchings(const ElementBigraph& g, const ColorAssignment& coloring);

struct IntersectionColoring {
    ColorAssignment assignment;
    int colors = 0;
    int k1 = 0;  // gammoid coloring number
    int k2 = 0;  // partition matroid coloring number (max part size)
    double ratio = 0.0;  // colors / max(k1, k2)
};

// Colors the intersection of the gammoid with a capacity-1 partition matroid:
// reduce the gammoid to a partition matroid, then edge-color the element
// bigraph. Uses at most max(2*k1 - 2, k2) <= 3 * max(k1, k2) colors; every
// class is verified independent in both matroids. The matroid universe must
// equal the instance's sources (UniverseMismatch otherwise).
IntersectionColoring intersection_color(const GammoidInstance& inst, const PartitionMatroid& m2,
                                        const ReduceOptions& opts = {});

// List-coloring variant: every element must offer at least
// max(maxpart(N), maxpart(m2)) allowable colors, which 2*max(k1, k2) always
// satisfies. Throws ListTooSmall naming the offending element.
IntersectionColoring list_color_intersection(const GammoidInstance& inst,
                                             const PartitionMatroid& m2,
                                             const std::map<VertexId, std::vector<int>>& lists,
                                             const ReduceOptions& opts = {});

}  // namespace gamred
