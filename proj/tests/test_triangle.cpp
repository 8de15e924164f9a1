#include "fixtures.hpp"

#include "qtrace/triangle.hpp"

#include <doctest.h>

using namespace qtrace;

TEST_CASE("corner arc elementary values") {
    auto tri = fixtures::triangle();
    // arc across the corner between slots 1,2; slot 1 is counterclockwise-first
    QTMonomial pp = corner_arc_trace(*tri, 0, 0, +1, 1, +1);
    CHECK(pp.coeff == omega(-1));
    CHECK(pp.exps == ExpVec{1, 1, 0});

    CHECK(corner_arc_trace(*tri, 0, 0, -1, 1, +1).is_zero());

    QTMonomial pm = corner_arc_trace(*tri, 0, 0, +1, 1, -1);
    CHECK(pm.coeff == omega(1));
    CHECK(pm.exps == ExpVec{1, -1, 0});

    // the arc is unoriented: swapping in/out does not change the value
    QTMonomial rev = corner_arc_trace(*tri, 0, 1, +1, 0, +1);
    CHECK(rev.coeff == pp.coeff);
    CHECK(rev.exps == pp.exps);
    CHECK(corner_arc_trace(*tri, 0, 1, +1, 0, -1).is_zero());

    CHECK_THROWS_AS(corner_arc_trace(*tri, 0, 1, +1, 1, +1), InputError);
}

TEST_CASE("corner arcs at every corner kill exactly the -,+ reading") {
    auto tri = fixtures::triangle();
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3;
        CHECK(corner_arc_trace(*tri, 0, a, -1, b, +1).is_zero());
        CHECK(!corner_arc_trace(*tri, 0, a, +1, b, -1).is_zero());
        CHECK(!corner_arc_trace(*tri, 0, a, +1, b, +1).is_zero());
        CHECK(!corner_arc_trace(*tri, 0, a, -1, b, -1).is_zero());
    }
}

TEST_CASE("u-turn values") {
    CHECK(uturn_arc_trace(+1, +1).is_zero());
    CHECK(uturn_arc_trace(-1, -1).is_zero());
    CHECK(uturn_arc_trace(+1, -1) == OmegaPoly::term(-5, -1));
    CHECK(uturn_arc_trace(-1, +1) == omega(-1));
}

TEST_CASE("face trace") {
    auto tri = fixtures::triangle();
    CHECK(face_trace(*tri, 0, {}).coeff == OmegaPoly(1));

    StatedArc one{{0, 1, 0}, +1, +1};
    QTMonomial single = face_trace(*tri, 0, {one});
    CHECK(single.coeff == omega(-1));

    // two parallel (+,+) arcs: (w^-1 Z1 Z2)^2 = w^-4 Z1^2 Z2^2
    StatedArc two{{0, 1, 1}, +1, +1};
    QTMonomial both = face_trace(*tri, 0, {one, two});
    CHECK(both.coeff == omega(-4));
    CHECK(both.exps == ExpVec{2, 2, 0});

    // products of monomials are monomials; slot exponents count signed ends
    StatedArc third{{1, 2, 2}, +1, -1};
    QTMonomial m = face_trace(*tri, 0, {one, two, third});
    CHECK(m.exps == ExpVec{2, 3, -1});

    StatedArc dup{{0, 2, 1}, +1, +1};
    CHECK_THROWS_AS(face_trace(*tri, 0, {two, dup}), InputError);
}

TEST_CASE("face trace is order sensitive but elevation sorted") {
    auto tri = fixtures::triangle();
    StatedArc low{{0, 1, 0}, +1, -1};
    StatedArc high{{1, 2, 1}, -1, -1};
    QTMonomial a = face_trace(*tri, 0, {low, high});
    QTMonomial b = face_trace(*tri, 0, {high, low});
    CHECK(a.coeff == b.coeff);  // the input order is irrelevant, elevations rule
    CHECK(a.exps == b.exps);
}
