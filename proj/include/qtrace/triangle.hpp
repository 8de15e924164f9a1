// Elementary quantum traces over a single triangle face.
#pragma once

#include "qtrace/surface.hpp"

namespace qtrace {

// A constant-elevation arc in one face joining two distinct side slots.
// Elevation ranks are unique within the face.
struct TriangleArc {
    int slot_in = 0;   // position 0..2
    int slot_out = 0;  // position 0..2, distinct from slot_in
    int elev = 0;

    bool operator==(const TriangleArc&) const = default;
};

// Trace of a single stated corner arc, as a term of the triangle tensor algebra.
// At the corner between clockwise-consecutive slots (a, a+1) the
// counterclockwise-first side is slot a; the arc dies when that side carries -
// and the other +. Otherwise the value is the Weyl bracket of the two stated
// side generators. A zero coefficient encodes the dead case.
QTMonomial corner_arc_trace(const IdealTriangulation& tri, int face, int pos_in, int sign_in,
                            int pos_out, int sign_out);

// Trace of a U-turn with the first sign at the higher elevation.
// Never produced by good-position links; kept for the elementary-case tables.
OmegaPoly uturn_arc_trace(int sign_high, int sign_low);

struct StatedArc {
    TriangleArc arc;
    int sign_in = 0;
    int sign_out = 0;
};

// Ordered product of stated arcs, lowest elevation leftmost.
// Throws on duplicate elevations.
QTMonomial face_trace(const IdealTriangulation& tri, int face, std::vector<StatedArc> arcs);

}  // namespace qtrace
