#include "qtrace/moves.hpp"

#include <algorithm>

namespace qtrace {

namespace {


[[noreturn]] void mismatch(const std::string& what) {
    throw InputError("move precondition mismatch: " + what);
}

struct Editor {
    GoodPositionLink link;

    explicit Editor(const GoodPositionLink& l) : link(l) {
        for (auto& as : link.arcs)
            std::sort(as.begin(), as.end(),
                      [](const TriangleArc& x, const TriangleArc& y) { return x.elev < y.elev; });
        renormalize();
    }

    void renormalize() {
        for (auto& as : link.arcs) {
            std::sort(as.begin(), as.end(),
                      [](const TriangleArc& x, const TriangleArc& y) { return x.elev < y.elev; });
            for (size_t i = 0; i < as.size(); ++i) as[i].elev = static_cast<int>(i);
        }
    }

    const IdealTriangulation& tri() const { return link.surface(); }

    TriangleArc& arc_at(int face, int rank) {
        auto& as = link.arcs[face];
        if (rank < 0 || rank >= static_cast<int>(as.size()))
            mismatch("no arc at rank " + std::to_string(rank) + " in face " +
                     std::to_string(face + 1));
        return as[rank];
    }

    static bool touches(const TriangleArc& a, int pos) {
        return a.slot_in == pos || a.slot_out == pos;
    }

    // 1-based wall height of the arc-end of rank `rank` at side `pos`.
    int end_height(int face, int pos, int rank) const {
        int h = 1;
        for (const TriangleArc& a : link.arcs[face])
            if (a.elev < rank && touches(a, pos)) ++h;
        return h;
    }

    int wall_role(int face, int pos) const {
        return tri().wall_of_slot(IdealTriangulation::slot_id(face, pos));
    }
    int edge_of(int face, int pos) const {
        return tri().edge_at_slot(IdealTriangulation::slot_id(face, pos));
    }

    // --- word editing -------------------------------------------------------

    void set_word(int e, int n0, std::vector<Slice> slices) {
        link.words[e] = TangleWord(n0, std::move(slices));
    }

    // Splices `add` in at the wall facing (face,pos): at the front of the word
    // when the side is wall 0 of its edge, at the back when it is wall 1.
    // `delta` is the width change at the edited wall; it only shifts the
    // stored wall-0 count when that wall is the edited one.
    void splice(int face, int pos, std::vector<Slice> add, int delta) {
        int e = edge_of(face, pos);
        const TangleWord& w = link.words[e];
        std::vector<Slice> slices;
        int n0 = w.n0();
        if (wall_role(face, pos) == 0) {
            n0 += delta;
            slices = std::move(add);
            slices.insert(slices.end(), w.slices().begin(), w.slices().end());
        } else {
            slices = w.slices();
            slices.insert(slices.end(), add.begin(), add.end());
        }
        set_word(e, n0, std::move(slices));
    }

    // Removes `expect.size()` slices adjacent to the wall facing (face,pos)
    // after checking they equal `expect`.
    void strip(int face, int pos, const std::vector<Slice>& expect, int delta,
               const std::string& what) {
        int e = edge_of(face, pos);
        const TangleWord& w = link.words[e];
        size_t k = expect.size();
        if (w.slices().size() < k) mismatch(what);
        std::vector<Slice> slices = w.slices();
        int n0 = w.n0();
        if (wall_role(face, pos) == 0) {
            n0 += delta;
            if (!std::equal(expect.begin(), expect.end(), slices.begin())) mismatch(what);
            slices.erase(slices.begin(), slices.begin() + static_cast<long>(k));
        } else {
            if (!std::equal(expect.begin(), expect.end(), slices.end() - static_cast<long>(k)))
                mismatch(what);
            slices.erase(slices.end() - static_cast<long>(k), slices.end());
        }
        set_word(e, n0, std::move(slices));
    }

    // kink curl on the strand at height h; positive = CrossOver (factor -A^-3)
    static std::vector<Slice> curl(int h, bool positive) {
        return {{SliceKind::Cup, h + 1},
                {positive ? SliceKind::CrossOver : SliceKind::CrossUnder, h},
                {SliceKind::Cap, h + 1}};
    }

    // turnback joining wall points h, h+1 as seen from (face,pos):
    // a leading Cap when the side is wall 0, a trailing Cup when it is wall 1
    std::vector<Slice> turnback_in(int face, int pos, int h) const {
        return {wall_role(face, pos) == 0 ? Slice{SliceKind::Cap, h} : Slice{SliceKind::Cup, h}};
    }
    // internalized connection replacing two vanished wall points at h, h+1
    std::vector<Slice> bridge_out(int face, int pos, int h) const {
        return {wall_role(face, pos) == 0 ? Slice{SliceKind::Cup, h} : Slice{SliceKind::Cap, h}};
    }

};

// Elementary turnback weight in a biangle: the strand returning to a wall of
// the given role, read (bottom, top).
OmegaPoly turnback_weight(int bottom, int top, int wall_role) {
    if (bottom == top) return OmegaPoly();
    OmegaPoly w = top == +1 ? skein_alpha() : skein_beta();
    if (wall_role == 0) w *= kink_factor_pos();
    return w;
}

// The unit by which the plain Move I rewrite scales the trace: the two-arc
// sum against the retracted connection, evaluated on one sign channel of the
// local identity.
OmegaPoly move_I_unit(const Editor& ed, int face, int a, int b) {
    const CommutationMatrix& c = *ed.tri().triangle_commutation();
    int gb = ed.wall_role(face, b);
    int far_a = 1 - ed.wall_role(face, a);
    for (auto [x1, x2] : {std::pair{-1, +1}, std::pair{+1, -1}}) {
        OmegaPoly rhs = turnback_weight(x1, x2, far_a);
        if (rhs.is_zero()) continue;
        OmegaPoly lhs;
        for (auto [mu_b, mu_t] : {std::pair{-1, +1}, std::pair{+1, -1}}) {
            QTMonomial lo = corner_arc_trace(ed.tri(), face, a, x1, b, mu_b);
            QTMonomial hi = corner_arc_trace(ed.tri(), face, a, x2, b, mu_t);
            if (lo.is_zero() || hi.is_zero()) continue;
            lhs += qt_mul(lo, hi, c).coeff * turnback_weight(mu_b, mu_t, gb);
        }
        if (lhs.is_zero()) continue;
        OmegaPoly u = lhs * rhs.unit_inverse();
        if (!u.is_unit()) throw ComputeError("move I local identity is not a unit");
        return u;
    }
    throw ComputeError("move I local identity vanished on every channel");
}

// Same for Move II: the bent pair against the straight arc.
OmegaPoly move_II_unit(const Editor& ed, int face, int x, int b, int y) {
    const CommutationMatrix& c = *ed.tri().triangle_commutation();
    int gb = ed.wall_role(face, b);
    for (int ex : {+1, -1})
        for (int ey : {+1, -1}) {
            QTMonomial rhs = corner_arc_trace(ed.tri(), face, x, ex, y, ey);
            if (rhs.is_zero()) continue;
            OmegaPoly lhs;
            for (auto [mu_b, mu_t] : {std::pair{-1, +1}, std::pair{+1, -1}}) {
                QTMonomial lo = corner_arc_trace(ed.tri(), face, x, ex, b, mu_b);
                QTMonomial hi = corner_arc_trace(ed.tri(), face, b, mu_t, y, ey);
                if (lo.is_zero() || hi.is_zero()) continue;
                lhs += qt_mul(lo, hi, c).coeff * turnback_weight(mu_b, mu_t, gb);
            }
            if (lhs.is_zero()) continue;
            OmegaPoly u = lhs * rhs.coeff.unit_inverse();
            if (!u.is_unit()) throw ComputeError("move II local identity is not a unit");
            return u;
        }
    throw ComputeError("move II local identity vanished on every channel");
}

// Curl slices realizing a unit in {1, -A^-3, -A^3}; empty for 1.
std::vector<Slice> curl_for_unit(const OmegaPoly& u, int h) {
    if (u == OmegaPoly(1)) return {};
    if (u == kink_factor_pos()) return Editor::curl(h, true);
    if (u == kink_factor_neg()) return Editor::curl(h, false);
    throw ComputeError("move correction is not a kink unit: " + u.str());
}

// the adjacent parallel pair for Moves I and III
std::pair<TriangleArc, TriangleArc> parallel_pair(Editor& ed, const MoveLoc& loc) {
    TriangleArc lo = ed.arc_at(loc.face, loc.rank);
    TriangleArc hi = ed.arc_at(loc.face, loc.rank + 1);
    bool same = (lo.slot_in == hi.slot_in && lo.slot_out == hi.slot_out) ||
                (lo.slot_in == hi.slot_out && lo.slot_out == hi.slot_in);
    if (!same) mismatch("arcs at ranks " + std::to_string(loc.rank) + "," +
                        std::to_string(loc.rank + 1) + " are not parallel");
    return {lo, hi};
}

// the adjacent pair sharing exactly one side, for Moves II and IV
struct SharedPair {
    TriangleArc lo, hi;
    int shared, lo_free, hi_free;
};

SharedPair shared_pair(Editor& ed, const MoveLoc& loc) {
    TriangleArc lo = ed.arc_at(loc.face, loc.rank);
    TriangleArc hi = ed.arc_at(loc.face, loc.rank + 1);
    for (int s : {lo.slot_in, lo.slot_out})
        for (int t : {hi.slot_in, hi.slot_out})
            if (s == t) {
                int lf = lo.slot_in == s ? lo.slot_out : lo.slot_in;
                int hf = hi.slot_in == s ? hi.slot_out : hi.slot_in;
                if (lf != hf) return {lo, hi, s, lf, hf};
            }
    mismatch("arcs at ranks " + std::to_string(loc.rank) + "," + std::to_string(loc.rank + 1) +
             " do not share exactly one side");
}

GoodPositionLink move_I(Editor ed, const MoveLoc& loc) {
    auto [lo, hi] = parallel_pair(ed, loc);
    int b = loc.slot_b;
    if (!Editor::touches(lo, b)) mismatch("slot_b is not a side of the parallel pair");
    int a = lo.slot_in == b ? lo.slot_out : lo.slot_in;

    int hb = ed.end_height(loc.face, b, loc.rank);
    int ha = ed.end_height(loc.face, a, loc.rank);
    ed.strip(loc.face, b, ed.turnback_in(loc.face, b, hb), -2,
             "no adjacent turnback joining wall points " + std::to_string(hb) + "," +
                 std::to_string(hb + 1) + " at the slot_b side");

    OmegaPoly u = move_I_unit(ed, loc.face, a, b);

    auto& as = ed.link.arcs[loc.face];
    as.erase(as.begin() + loc.rank, as.begin() + loc.rank + 2);
    ed.renormalize();

    // the retracted connection, with a kink whenever the local identity
    // produces a unit other than 1
    std::vector<Slice> add = ed.bridge_out(loc.face, a, ha);
    auto k = curl_for_unit(u, ha);
    if (ed.wall_role(loc.face, a) == 0) add.insert(add.end(), k.begin(), k.end());
    else add.insert(add.begin(), k.begin(), k.end());
    ed.splice(loc.face, a, std::move(add), -2);
    validate_link(ed.link);
    return ed.link;
}

GoodPositionLink move_I_inv(Editor ed, const MoveLoc& loc) {
    int a = loc.slot_a, b = loc.slot_b;
    if (a < 0 || a > 2 || b < 0 || b > 2 || a == b) mismatch("slots for move I^-1");
    auto& as = ed.link.arcs[loc.face];
    if (loc.rank < 0 || loc.rank > static_cast<int>(as.size()))
        mismatch("insertion rank out of range");

    int ha = ed.end_height(loc.face, a, loc.rank);
    int hb = ed.end_height(loc.face, b, loc.rank);
    OmegaPoly u = move_I_unit(ed, loc.face, a, b);

    std::vector<Slice> expect = ed.bridge_out(loc.face, a, ha);
    auto k = curl_for_unit(u, ha);
    if (ed.wall_role(loc.face, a) == 0) expect.insert(expect.end(), k.begin(), k.end());
    else expect.insert(expect.begin(), k.begin(), k.end());
    ed.strip(loc.face, a, expect, +2, "no internal connection (with matching kink) at the slot_a side");

    for (TriangleArc& x : as)
        if (x.elev >= loc.rank) x.elev += 2;
    as.push_back({a, b, loc.rank});
    as.push_back({a, b, loc.rank + 1});
    ed.renormalize();

    ed.splice(loc.face, b, ed.turnback_in(loc.face, b, hb), +2);
    validate_link(ed.link);
    return ed.link;
}

GoodPositionLink move_II(Editor ed, const MoveLoc& loc) {
    SharedPair p = shared_pair(ed, loc);
    int b = p.shared;
    int hb = ed.end_height(loc.face, b, loc.rank);
    OmegaPoly u = move_II_unit(ed, loc.face, p.lo_free, b, p.hi_free);
    ed.strip(loc.face, b, ed.turnback_in(loc.face, b, hb), -2,
             "no adjacent turnback at the shared side");

    auto& as = ed.link.arcs[loc.face];
    int x = p.lo_free, y = p.hi_free;
    int hx = ed.end_height(loc.face, x, loc.rank);
    as.erase(as.begin() + loc.rank, as.begin() + loc.rank + 2);
    as.push_back({x, y, loc.rank});  // ranks renormalize below
    ed.renormalize();

    ed.splice(loc.face, x, curl_for_unit(u, hx), 0);
    validate_link(ed.link);
    return ed.link;
}

GoodPositionLink move_II_inv(Editor ed, const MoveLoc& loc) {
    TriangleArc arc = ed.arc_at(loc.face, loc.rank);
    int b = loc.slot_b;
    if (b == arc.slot_in || b == arc.slot_out || b < 0 || b > 2)
        mismatch("slot_b must be the side not touched by the arc");
    int x = arc.slot_in, y = arc.slot_out;
    int hb = ed.end_height(loc.face, b, loc.rank);
    int hx = ed.end_height(loc.face, x, loc.rank);
    OmegaPoly u = move_II_unit(ed, loc.face, x, b, y);

    auto& as = ed.link.arcs[loc.face];
    as.erase(as.begin() + loc.rank);
    for (TriangleArc& t : as)
        if (t.elev >= loc.rank) t.elev += 2;
    as.push_back({x, b, loc.rank});
    as.push_back({b, y, loc.rank + 1});
    ed.renormalize();

    ed.splice(loc.face, b, ed.turnback_in(loc.face, b, hb), +2);
    ed.splice(loc.face, x, curl_for_unit(u.unit_inverse(), hx), 0);
    validate_link(ed.link);
    return ed.link;
}

GoodPositionLink move_III(Editor ed, const MoveLoc& loc, bool inverse) {
    auto [lo, hi] = parallel_pair(ed, loc);
    // the pair spans the corner (a, a+1); the two crossings carry opposite
    // signs so that the net framing change cancels
    int a = (lo.slot_in + 1) % 3 == lo.slot_out ? lo.slot_in : lo.slot_out;
    int b = (a + 1) % 3;
    int ha = ed.end_height(loc.face, a, loc.rank);
    int hb = ed.end_height(loc.face, b, loc.rank);

    Slice ca{SliceKind::CrossOver, ha};
    Slice cb{SliceKind::CrossUnder, hb};
    if (!inverse) {
        ed.splice(loc.face, a, {ca}, 0);
        ed.splice(loc.face, b, {cb}, 0);
    } else {
        ed.strip(loc.face, a, {ca}, 0, "no matching crossing adjacent at the first side");
        ed.strip(loc.face, b, {cb}, 0, "no matching crossing adjacent at the second side");
    }
    auto& as = ed.link.arcs[loc.face];
    std::swap(as[loc.rank].elev, as[loc.rank + 1].elev);
    ed.renormalize();
    validate_link(ed.link);
    return ed.link;
}

GoodPositionLink move_IV(Editor ed, const MoveLoc& loc, bool inverse) {
    SharedPair pr = shared_pair(ed, loc);
    int c = pr.shared;
    int hc = ed.end_height(loc.face, c, loc.rank);
    // the crossing sign is fixed by which of the two arcs cuts off the corner
    // clockwise-after the shared side; transposition flips that arc
    bool upper_after = pr.hi_free == (c + 1) % 3;
    bool over = inverse ? !upper_after : upper_after;
    Slice cr{over ? SliceKind::CrossOver : SliceKind::CrossUnder, hc};
    if (!inverse) ed.splice(loc.face, c, {cr}, 0);
    else ed.strip(loc.face, c, {cr}, 0, "no matching crossing adjacent at the shared side");
    auto& as = ed.link.arcs[loc.face];
    std::swap(as[loc.rank].elev, as[loc.rank + 1].elev);
    ed.renormalize();
    validate_link(ed.link);
    return ed.link;
}

GoodPositionLink move_V(Editor ed, const MoveLoc& loc, bool inverse) {
    TriangleArc arc = ed.arc_at(loc.face, loc.rank);
    int hin = ed.end_height(loc.face, arc.slot_in, loc.rank);
    int hout = ed.end_height(loc.face, arc.slot_out, loc.rank);
    auto cin = Editor::curl(hin, true);
    auto cout = Editor::curl(hout, false);
    if (!inverse) {
        ed.splice(loc.face, arc.slot_in, cin, 0);
        ed.splice(loc.face, arc.slot_out, cout, 0);
    } else {
        ed.strip(loc.face, arc.slot_in, cin, 0, "no positive kink adjacent at the in side");
        ed.strip(loc.face, arc.slot_out, cout, 0, "no negative kink adjacent at the out side");
    }
    validate_link(ed.link);
    return ed.link;
}

}  // namespace

std::string move_name(MoveId id) {
    switch (id) {
        case MoveId::I: return "I";
        case MoveId::Iinv: return "I^-1";
        case MoveId::II: return "II";
        case MoveId::IIinv: return "II^-1";
        case MoveId::III: return "III";
        case MoveId::IIIinv: return "III^-1";
        case MoveId::IV: return "IV";
        case MoveId::IVinv: return "IV^-1";
        case MoveId::V: return "V";
        case MoveId::Vinv: return "V^-1";
    }
    return "?";
}

GoodPositionLink apply_move(const GoodPositionLink& link, MoveId id, const MoveLoc& loc) {
    validate_link(link);
    Editor ed(link);
    if (loc.face < 0 || loc.face >= link.surface().faces())
        throw InputError("move location: face out of range");
    switch (id) {
        case MoveId::I: return move_I(std::move(ed), loc);
        case MoveId::Iinv: return move_I_inv(std::move(ed), loc);
        case MoveId::II: return move_II(std::move(ed), loc);
        case MoveId::IIinv: return move_II_inv(std::move(ed), loc);
        case MoveId::III: return move_III(std::move(ed), loc, false);
        case MoveId::IIIinv: return move_III(std::move(ed), loc, true);
        case MoveId::IV: return move_IV(std::move(ed), loc, false);
        case MoveId::IVinv: return move_IV(std::move(ed), loc, true);
        case MoveId::V: return move_V(std::move(ed), loc, false);
        case MoveId::Vinv: return move_V(std::move(ed), loc, true);
    }
    throw ComputeError("unreachable move id");
}

std::vector<std::pair<MoveId, MoveLoc>> find_moves(const GoodPositionLink& link) {
    std::vector<std::pair<MoveId, MoveLoc>> out;
    auto try_move = [&](MoveId id, const MoveLoc& loc) {
        try {
            apply_move(link, id, loc);
            out.emplace_back(id, loc);
        } catch (const InputError&) {
        }
    };
    for (int f = 0; f < link.surface().faces(); ++f) {
        int k = static_cast<int>(link.arcs[f].size());
        for (int r = 0; r < k; ++r) {
            try_move(MoveId::V, {f, r});
            try_move(MoveId::Vinv, {f, r});
            for (int b = 0; b < 3; ++b) try_move(MoveId::IIinv, {f, r, -1, b});
            if (r + 1 < k) {
                try_move(MoveId::II, {f, r});
                try_move(MoveId::III, {f, r});
                try_move(MoveId::IIIinv, {f, r});
                try_move(MoveId::IV, {f, r});
                try_move(MoveId::IVinv, {f, r});
                for (int b = 0; b < 3; ++b) try_move(MoveId::I, {f, r, -1, b});
            }
        }
        for (int r = 0; r <= k; ++r)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    if (a != b) try_move(MoveId::Iinv, {f, r, a, b});
    }
    return out;
}

}  // namespace qtrace
