#include "fixtures.hpp"

#include "qtrace/flip_transfer.hpp"
#include "qtrace/moves.hpp"

#include <doctest.h>

using namespace qtrace;
namespace fx = qtrace::fixtures;

namespace {

// evaluate a block in the tensor algebra of the given square triangulation,
// with side roles mapped through `slot_of(role, rel_face)`
QTElement block_element(const Block& blk, const IdealTriangulation& tri, int fj, int fk,
                        bool flipped) {
    auto slot_of = [&](int role, int rel) {
        if (!flipped) {
            switch (role) {
                case 1: return rel == 0 ? IdealTriangulation::slot_id(fj, 0)
                                        : IdealTriangulation::slot_id(fk, 0);
                case 5: return IdealTriangulation::slot_id(fj, 1);
                case 2: return IdealTriangulation::slot_id(fj, 2);
                case 3: return IdealTriangulation::slot_id(fk, 1);
                case 4: return IdealTriangulation::slot_id(fk, 2);
            }
        } else {
            switch (role) {
                case 1: return rel == 0 ? IdealTriangulation::slot_id(fj, 0)
                                        : IdealTriangulation::slot_id(fk, 0);
                case 2: return IdealTriangulation::slot_id(fj, 1);
                case 3: return IdealTriangulation::slot_id(fj, 2);
                case 4: return IdealTriangulation::slot_id(fk, 1);
                case 5: return IdealTriangulation::slot_id(fk, 2);
            }
        }
        throw ComputeError("bad role");
    };
    QTElement out(tri.triangle_commutation());
    for (const BlockTerm& t : blk) {
        std::vector<std::pair<int, int>> factors;
        for (const auto& [role, exp] : t.t1) factors.emplace_back(slot_of(role, 0), exp);
        for (const auto& [role, exp] : t.t2) factors.emplace_back(slot_of(role, 1), exp);
        out.add_term(weyl_order(factors, *tri.triangle_commutation()));
    }
    return out;
}

}  // namespace

TEST_CASE("block tables agree with first-principles derivation") {
    // the canonical squares used by derive_block
    auto make_square = [&](bool flipped) {
        std::vector<EdgeRec> recs;
        recs.push_back({"d", IdealTriangulation::slot_id(0, 0), IdealTriangulation::slot_id(1, 0)});
        if (!flipped) {
            recs.push_back({"5", IdealTriangulation::slot_id(0, 1), -1});
            recs.push_back({"2", IdealTriangulation::slot_id(0, 2), -1});
            recs.push_back({"3", IdealTriangulation::slot_id(1, 1), -1});
            recs.push_back({"4", IdealTriangulation::slot_id(1, 2), -1});
        } else {
            recs.push_back({"2", IdealTriangulation::slot_id(0, 1), -1});
            recs.push_back({"3", IdealTriangulation::slot_id(0, 2), -1});
            recs.push_back({"4", IdealTriangulation::slot_id(1, 1), -1});
            recs.push_back({"5", IdealTriangulation::slot_id(1, 2), -1});
        }
        return IdealTriangulation::build(2, std::move(recs));
    };
    int entries = 0, nonzero = 0;
    for (bool flipped : {false, true}) {
        IdealTriangulation sq = make_square(flipped);
        for (int lo = 2; lo <= 4; ++lo)
            for (int hi = lo + 1; hi <= 5; ++hi)
                for (int elo : {+1, -1})
                    for (int ehi : {+1, -1}) {
                        Block table = flipped ? flip_block_target(lo, hi, elo, ehi)
                                              : flip_block_source(lo, hi, elo, ehi);
                        Block derived = derive_block(flipped, lo, hi, elo, ehi);
                        QTElement te = block_element(table, sq, 0, 1, flipped);
                        QTElement de = block_element(derived, sq, 0, 1, flipped);
                        CHECK(te == de);
                        ++entries;
                        if (!table.empty()) ++nonzero;
                    }
    }
    CHECK(entries == 48);
    // the two printed lists carry 20 nonzero state cases each
    CHECK(nonzero == 40);
}

TEST_CASE("reposition rebuilds the strand patterns") {
    auto sq = fx::square();
    for (int lo = 2; lo <= 4; ++lo)
        for (int hi = lo + 1; hi <= 5; ++hi) {
            GoodPositionLink link = fx::square_strand(sq, lo, hi);
            GoodPositionLink moved = reposition_link(link, 0);
            CHECK(moved.surface().edges() == 5);
            // strand count through each outer side is preserved
            for (const char* name : {"2", "3", "4", "5"}) {
                int e_old = link.surface().edge_index(name);
                int e_new = moved.surface().edge_index(name);
                CHECK(moved.words[e_new].n1() == link.words[e_old].n1());
            }
        }
    GoodPositionLink empty = make_link(sq, {{}, {}});
    GoodPositionLink moved = reposition_link(empty, 0);
    CHECK(moved.arcs[0].empty());
    CHECK(moved.arcs[1].empty());
}

TEST_CASE("transfer equals the direct recomputation on single strands") {
    auto sq = fx::square();
    int identities = 0;
    for (int lo = 2; lo <= 4; ++lo)
        for (int hi = lo + 1; hi <= 5; ++hi) {
            GoodPositionLink link = fx::square_strand(sq, lo, hi);
            GoodPositionLink moved = reposition_link(link, 0);
            for (const BoundaryState& s : fx::enumerate_states(link)) {
                QTElement via_table = transfer_trace(link, 0, s);
                QTElement direct = quantum_trace(moved, s);
                CHECK(via_table == direct);
                if (!via_table.is_zero()) ++identities;
            }
        }
    CHECK(identities >= 19);
}

TEST_CASE("transfer on multi-strand links") {
    auto sq = fx::square();
    std::vector<GoodPositionLink> fixtures = {
        superpose(fx::square_strand(sq, 2, 4), fx::square_strand(sq, 3, 5)),
        superpose(fx::square_strand(sq, 2, 3), fx::square_strand(sq, 4, 5)),
        superpose(fx::square_strand(sq, 2, 5), fx::square_strand(sq, 3, 4)),
        superpose(fx::square_strand(sq, 2, 4), fx::square_strand(sq, 2, 4)),
        superpose(superpose(fx::square_strand(sq, 2, 5), fx::square_strand(sq, 2, 4)),
                  fx::square_strand(sq, 3, 4)),
    };
    TraceOptions opt{true, false};
    for (const GoodPositionLink& link : fixtures) {
        GoodPositionLink moved = reposition_link(link, 0);
        for (const BoundaryState& s : fx::enumerate_states(link))
            CHECK(transfer_trace(link, 0, s, opt) == quantum_trace(moved, s, opt));
    }
}

TEST_CASE("transfer on the punctured torus") {
    auto tri = fx::punctured_torus();
    GoodPositionLink curve = fx::torus_curve_10(tri);
    // flip at the edge the curve does not cross: its square sees the curve as
    // a pair of (2,5) and (3,4) strands
    int e = 2;
    GoodPositionLink moved = reposition_link(curve, e);
    QTElement direct = quantum_trace(moved, {});
    QTElement via_table = transfer_trace(curve, e, {});
    CHECK(via_table == direct);

    // flipping an edge the curve crosses once: the strands are horizontal too
    for (int other : {0, 1}) {
        GoodPositionLink m2 = reposition_link(curve, other);
        CHECK(transfer_trace(curve, other, {}) == quantum_trace(m2, {}));
    }

    GoodPositionLink doubled = superpose(curve, curve);
    for (int any : {0, 1, 2})
        CHECK(transfer_trace(doubled, any, {}, {true, false}) ==
              quantum_trace(reposition_link(doubled, any), {}, {true, false}));
}

TEST_CASE("flip transfer preconditions") {
    auto sq = fx::square();
    GoodPositionLink strand = fx::square_strand(sq, 2, 4);
    // crossings over the diagonal biangle are rejected
    GoodPositionLink busy = superpose(strand, strand);
    busy.words[0] = TangleWord(2, {{SliceKind::CrossOver, 1}});
    CHECK_THROWS_WITH_AS(reposition_link(busy, 0), doctest::Contains("non-horizontal"),
                         InputError);
    // boundary edges cannot be flipped
    CHECK_THROWS_AS(reposition_link(strand, sq->edge_index("2")), InputError);
}

TEST_CASE("transfer composes with moves") {
    // push a kink pair onto a square strand, flip, and compare
    auto sq = fx::square();
    GoodPositionLink link = apply_move(fx::square_strand(sq, 2, 5), MoveId::V, {0, 0});
    GoodPositionLink moved = reposition_link(link, 0);
    for (const BoundaryState& s : fx::enumerate_states(link))
        CHECK(transfer_trace(link, 0, s) == quantum_trace(moved, s));
}
