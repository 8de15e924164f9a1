// Good-position links over a split ideal triangulation and the global quantum
// trace: compatible-state contraction, superposition, and leading terms.
#pragma once

#include "qtrace/biangle.hpp"
#include "qtrace/triangle.hpp"

#include <map>

namespace qtrace {

// Diagrammatic input to the trace: constant-elevation arcs per face plus a
// tangle word per edge's biangle. Wall 0 of edge i attaches to the arc ends at
// its record-first slot, wall 1 to the second slot (or to the surface boundary
// for boundary edges); the k-th lowest wall point meets the k-th lowest arc end.
struct GoodPositionLink {
    std::shared_ptr<const IdealTriangulation> tri;
    std::vector<std::vector<TriangleArc>> arcs;  // per face, any order; ranks unique per face
    std::vector<TangleWord> words;               // per edge

    const IdealTriangulation& surface() const { return *tri; }
};

// Signs on the link's boundary points, bottom-up per boundary edge.
struct BoundaryState {
    std::map<int, std::vector<int>> signs;  // edge index -> +-1 sequence
};

// Builds and validates a link. `raw_words` maps edge index -> slices; edges
// without an entry get the identity word of the induced width.
GoodPositionLink make_link(std::shared_ptr<const IdealTriangulation> tri,
                           std::vector<std::vector<TriangleArc>> arcs,
                           std::map<int, std::vector<Slice>> raw_words = {});

// Count of arc ends at a slot (the width of the adjacent biangle wall).
int slot_width(const GoodPositionLink& link, int slot);
void validate_link(const GoodPositionLink& link);
void validate_state(const GoodPositionLink& link, const BoundaryState& s);

struct TraceOptions {
    bool allow_large = false;  // lifts the 24-point cap
    bool naive = false;        // full enumeration without pruning (cross-check path)
};

// The quantum trace in the Weyl edge basis (stored normal-ordered).
QTElement quantum_trace(const GoodPositionLink& link, const BoundaryState& s,
                        const TraceOptions& opts = {});

// Same sum computed in the triangle tensor algebra, before the change of basis.
QTElement quantum_trace_tensor(const GoodPositionLink& link, const BoundaryState& s,
                               const TraceOptions& opts = {});

// Stacks k2 above k1: arcs shifted past k1's, words stacked with k2's slices
// acting on the upper strand block.
GoodPositionLink superpose(const GoodPositionLink& k1, const GoodPositionLink& k2);
BoundaryState superpose_states(const GoodPositionLink& k1, const BoundaryState& s1,
                               const BoundaryState& s2);

// Geometric intersection count with each edge; requires a simple diagram
// (all words are identity).
ExpVec leading_intersection_vector(const GoodPositionLink& link);

// One traversal step of a link component: entering `face` through `pos_in`
// and leaving through `pos_out` after crossing edge `edge_in`.
struct Passage {
    int edge_in;
    int face;
    int pos_in;
    int pos_out;
};

struct LinkComponent {
    bool closed = false;
    std::vector<Passage> passages;   // cyclic when closed
    bool biangle_circle = false;     // closed component inside a single biangle
    int circle_edge = -1;
};

// Splits a crossingless link into components by following strands.
std::vector<LinkComponent> link_components(const GoodPositionLink& link);

}  // namespace qtrace
