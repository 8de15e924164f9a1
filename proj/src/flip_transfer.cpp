#include "qtrace/flip_transfer.hpp"

#include "qtrace/triangle.hpp"

#include <algorithm>
#include <cstdint>

namespace qtrace {

namespace {

struct Key {
    int lo, hi, elo, ehi;
    bool operator<(const Key& o) const {
        return std::tie(lo, hi, elo, ehi) < std::tie(o.lo, o.hi, o.elo, o.ehi);
    }
};

// Side role -> (relative face 0/1, relative slot 0..2), for the unflipped and
// flipped squares. Face 0 carries sides (1,5,2) before and (1,2,3) after;
// face 1 carries (1,3,4) before and (1,4,5) after.
int role_slot(bool flipped, int role, int& rel_face) {
    if (!flipped) {
        switch (role) {
            case 1: rel_face = -1; return 0;  // either face
            case 5: rel_face = 0; return 1;
            case 2: rel_face = 0; return 2;
            case 3: rel_face = 1; return 1;
            case 4: rel_face = 1; return 2;
        }
    } else {
        switch (role) {
            case 1: rel_face = -1; return 0;
            case 2: rel_face = 0; return 1;
            case 3: rel_face = 0; return 2;
            case 4: rel_face = 1; return 1;
            case 5: rel_face = 1; return 2;
        }
    }
    throw ComputeError("bad side role");
}

// Which relative face a non-diagonal side belongs to.
int role_face(bool flipped, int role) {
    int f = -1;
    role_slot(flipped, role, f);
    return f;
}

std::map<Key, Block> make_table(bool flipped) {
    std::map<Key, Block> t;
    auto B1 = [](std::vector<std::pair<int, int>> a) { return BlockTerm{std::move(a), {}}; };
    auto B2 = [](std::vector<std::pair<int, int>> a) { return BlockTerm{{}, std::move(a)}; };
    auto BB = [](std::vector<std::pair<int, int>> a, std::vector<std::pair<int, int>> b) {
        return BlockTerm{std::move(a), std::move(b)};
    };
    if (!flipped) {
        t[{2, 3, +1, +1}] = {BB({{2, 1}, {1, 1}}, {{1, 1}, {3, 1}})};
        t[{2, 3, +1, -1}] = {BB({{2, 1}, {1, 1}}, {{1, 1}, {3, -1}}),
                             BB({{2, 1}, {1, -1}}, {{1, -1}, {3, -1}})};
        t[{2, 3, -1, -1}] = {BB({{2, -1}, {1, -1}}, {{1, -1}, {3, -1}})};

        t[{2, 4, +1, +1}] = {BB({{2, 1}, {1, 1}}, {{1, 1}, {4, 1}}),
                             BB({{2, 1}, {1, -1}}, {{1, -1}, {4, 1}})};
        t[{2, 4, +1, -1}] = {BB({{2, 1}, {1, -1}}, {{1, -1}, {4, -1}})};
        t[{2, 4, -1, +1}] = {BB({{2, -1}, {1, -1}}, {{1, -1}, {4, 1}})};
        t[{2, 4, -1, -1}] = {BB({{2, -1}, {1, -1}}, {{1, -1}, {4, -1}})};

        t[{2, 5, +1, +1}] = {B1({{2, 1}, {5, 1}})};
        t[{2, 5, -1, +1}] = {B1({{2, -1}, {5, 1}})};
        t[{2, 5, -1, -1}] = {B1({{2, -1}, {5, -1}})};

        t[{3, 4, +1, +1}] = {B2({{3, 1}, {4, 1}})};
        t[{3, 4, +1, -1}] = {B2({{3, 1}, {4, -1}})};
        t[{3, 4, -1, -1}] = {B2({{3, -1}, {4, -1}})};

        t[{3, 5, +1, +1}] = {BB({{5, 1}, {1, 1}}, {{1, 1}, {3, 1}})};
        t[{3, 5, -1, +1}] = {BB({{5, 1}, {1, 1}}, {{1, 1}, {3, -1}})};
        t[{3, 5, +1, -1}] = {BB({{5, -1}, {1, 1}}, {{1, 1}, {3, 1}})};
        t[{3, 5, -1, -1}] = {BB({{5, -1}, {1, 1}}, {{1, 1}, {3, -1}}),
                             BB({{5, -1}, {1, -1}}, {{1, -1}, {3, -1}})};

        t[{4, 5, +1, +1}] = {BB({{5, 1}, {1, 1}}, {{1, 1}, {4, 1}})};
        t[{4, 5, +1, -1}] = {BB({{5, -1}, {1, 1}}, {{1, 1}, {4, 1}}),
                             BB({{5, -1}, {1, -1}}, {{1, -1}, {4, 1}})};
        t[{4, 5, -1, -1}] = {BB({{5, -1}, {1, -1}}, {{1, -1}, {4, -1}})};
    } else {
        t[{2, 3, +1, +1}] = {B1({{2, 1}, {3, 1}})};
        t[{2, 3, +1, -1}] = {B1({{2, 1}, {3, -1}})};
        t[{2, 3, -1, -1}] = {B1({{2, -1}, {3, -1}})};

        t[{2, 4, +1, +1}] = {BB({{2, 1}, {1, 1}}, {{1, 1}, {4, 1}})};
        t[{2, 4, +1, -1}] = {BB({{2, 1}, {1, 1}}, {{1, 1}, {4, -1}})};
        t[{2, 4, -1, +1}] = {BB({{2, -1}, {1, 1}}, {{1, 1}, {4, 1}})};
        t[{2, 4, -1, -1}] = {BB({{2, -1}, {1, 1}}, {{1, 1}, {4, -1}}),
                             BB({{2, -1}, {1, -1}}, {{1, -1}, {4, -1}})};

        t[{2, 5, +1, +1}] = {BB({{2, 1}, {1, 1}}, {{1, 1}, {5, 1}})};
        t[{2, 5, -1, +1}] = {BB({{2, -1}, {1, 1}}, {{1, 1}, {5, 1}}),
                             BB({{2, -1}, {1, -1}}, {{1, -1}, {5, 1}})};
        t[{2, 5, -1, -1}] = {BB({{2, -1}, {1, -1}}, {{1, -1}, {5, -1}})};

        t[{3, 4, +1, +1}] = {BB({{3, 1}, {1, 1}}, {{1, 1}, {4, 1}})};
        t[{3, 4, +1, -1}] = {BB({{3, 1}, {1, 1}}, {{1, 1}, {4, -1}}),
                             BB({{3, 1}, {1, -1}}, {{1, -1}, {4, -1}})};
        t[{3, 4, -1, -1}] = {BB({{3, -1}, {1, -1}}, {{1, -1}, {4, -1}})};

        t[{3, 5, +1, +1}] = {BB({{3, 1}, {1, 1}}, {{1, 1}, {5, 1}}),
                             BB({{3, 1}, {1, -1}}, {{1, -1}, {5, 1}})};
        t[{3, 5, -1, +1}] = {BB({{3, -1}, {1, -1}}, {{1, -1}, {5, 1}})};
        t[{3, 5, +1, -1}] = {BB({{3, 1}, {1, -1}}, {{1, -1}, {5, -1}})};
        t[{3, 5, -1, -1}] = {BB({{3, -1}, {1, -1}}, {{1, -1}, {5, -1}})};

        t[{4, 5, +1, +1}] = {B2({{4, 1}, {5, 1}})};
        t[{4, 5, +1, -1}] = {B2({{4, 1}, {5, -1}})};
        t[{4, 5, -1, -1}] = {B2({{4, -1}, {5, -1}})};
    }
    return t;
}

const std::map<Key, Block>& table(bool flipped) {
    static const std::map<Key, Block> source = make_table(false);
    static const std::map<Key, Block> target = make_table(true);
    return flipped ? target : source;
}

Block lookup(bool flipped, int lo, int hi, int elo, int ehi) {
    if (lo < 2 || hi > 5 || lo >= hi) throw ComputeError("bad connection type");
    const auto& t = table(flipped);
    auto it = t.find({lo, hi, elo, ehi});
    return it == t.end() ? Block{} : it->second;
}

}  // namespace

Block flip_block_source(int lo, int hi, int elo, int ehi) { return lookup(false, lo, hi, elo, ehi); }
Block flip_block_target(int lo, int hi, int elo, int ehi) { return lookup(true, lo, hi, elo, ehi); }

Block derive_block(bool flipped, int lo, int hi, int elo, int ehi) {
    // Work over a standalone square: two faces glued along the diagonal,
    // every other side a boundary edge.
    std::vector<EdgeRec> recs;
    recs.push_back({"d", IdealTriangulation::slot_id(0, 0), IdealTriangulation::slot_id(1, 0)});
    for (int role = 2; role <= 5; ++role) {
        int f = role_face(flipped, role);
        int s = role_slot(flipped, role, f);
        recs.push_back({std::to_string(role), IdealTriangulation::slot_id(f, s), -1});
    }
    IdealTriangulation sq = IdealTriangulation::build(2, std::move(recs));

    int flo = role_face(flipped, lo), fhi = role_face(flipped, hi);
    int slo = role_slot(flipped, lo, flo), shi = role_slot(flipped, hi, fhi);
    Block out;
    if (flo == fhi) {
        QTMonomial m = corner_arc_trace(sq, flo, slo, elo, shi, ehi);
        if (m.is_zero()) return out;
        BlockTerm term;
        auto& side = flo == 0 ? term.t1 : term.t2;
        side = {{lo, elo}, {hi, ehi}};
        out.push_back(std::move(term));
        return out;
    }
    for (int mu : {+1, -1}) {
        QTMonomial a = corner_arc_trace(sq, flo, slo, elo, 0, mu);
        QTMonomial b = corner_arc_trace(sq, fhi, shi, ehi, 0, mu);
        if (a.is_zero() || b.is_zero()) continue;
        BlockTerm term;
        term.t1 = {{flo == 0 ? lo : hi, flo == 0 ? elo : ehi}, {1, mu}};
        term.t2 = {{flo == 0 ? hi : lo, flo == 0 ? ehi : elo}, {1, mu}};
        out.push_back(std::move(term));
    }
    return out;
}

namespace {

struct Strand {
    int lo = 0, hi = 0;          // connection type, 2 <= lo < hi <= 5
    int diag_rank_j = -1, diag_rank_k = -1;  // source ranks, -1 when absent
};

struct SquareInfo {
    int e = -1, fj = -1, fk = -1;
    int p = 0, r = 0;  // diagonal slot positions over the source triangulation
    std::vector<Strand> strands;  // bottom to top
};

SquareInfo analyze_square(const GoodPositionLink& link, int e) {
    validate_link(link);
    const IdealTriangulation& tri = link.surface();
    const EdgeRec& rec = tri.edge(e);
    if (rec.boundary()) throw InputError("cannot flip boundary edge '" + rec.name + "'");
    SquareInfo sq;
    sq.e = e;
    sq.fj = IdealTriangulation::slot_face(rec.slot0);
    sq.fk = IdealTriangulation::slot_face(rec.slot1);
    if (sq.fj == sq.fk) throw InputError("cannot flip self-folded edge '" + rec.name + "'");
    sq.p = IdealTriangulation::slot_pos(rec.slot0);
    sq.r = IdealTriangulation::slot_pos(rec.slot1);
    if (!link.words[e].slices().empty())
        throw InputError("square contains non-horizontal content: the diagonal biangle of '" +
                         rec.name + "' is not the identity");

    // classify the two faces' arcs: wholly inside one face or crossing the diagonal
    auto role_of = [&](int face, int pos) {
        if (face == sq.fj) {
            if (pos == (sq.p + 1) % 3) return 5;
            if (pos == (sq.p + 2) % 3) return 2;
        } else {
            if (pos == (sq.r + 1) % 3) return 3;
            if (pos == (sq.r + 2) % 3) return 4;
        }
        return 1;
    };
    struct Half {
        int role;  // the non-diagonal side
        int rank;
    };
    std::vector<Half> halves_j, halves_k;
    std::vector<std::pair<Strand, int>> singles_j, singles_k;  // (strand, rank)
    auto scan = [&](int face, std::vector<Half>& halves, std::vector<std::pair<Strand, int>>& singles) {
        std::vector<TriangleArc> as = link.arcs[face];
        std::sort(as.begin(), as.end(),
                  [](const TriangleArc& x, const TriangleArc& y) { return x.elev < y.elev; });
        for (int i = 0; i < static_cast<int>(as.size()); ++i) {
            int ra = role_of(face, as[i].slot_in), rb = role_of(face, as[i].slot_out);
            if (ra == 1 && rb == 1)
                throw InputError("square contains non-horizontal content: arc along the diagonal");
            if (ra == 1 || rb == 1) {
                halves.push_back({ra == 1 ? rb : ra, i});
            } else {
                Strand s;
                s.lo = std::min(ra, rb);
                s.hi = std::max(ra, rb);
                singles.push_back({s, i});
            }
        }
    };
    scan(sq.fj, halves_j, singles_j);
    scan(sq.fk, halves_k, singles_k);
    if (halves_j.size() != halves_k.size())
        throw ComputeError("diagonal strand counts disagree");

    // identity biangle: the i-th lowest diagonal end on one side meets the
    // i-th lowest on the other
    std::vector<Strand> crossing;
    for (size_t i = 0; i < halves_j.size(); ++i) {
        Strand s;
        int a = halves_j[i].role, b = halves_k[i].role;
        s.lo = std::min(a, b);
        s.hi = std::max(a, b);
        s.diag_rank_j = halves_j[i].rank;
        s.diag_rank_k = halves_k[i].rank;
        crossing.push_back(s);
    }

    // merge into one bottom-to-top order extending both faces' rank orders
    size_t ic = 0, isj = 0, isk = 0;
    auto next_j = [&]() {
        int r1 = ic < crossing.size() ? crossing[ic].diag_rank_j : INT32_MAX;
        int r2 = isj < singles_j.size() ? singles_j[isj].second : INT32_MAX;
        return std::min(r1, r2);
    };
    auto next_k = [&]() {
        int r1 = ic < crossing.size() ? crossing[ic].diag_rank_k : INT32_MAX;
        int r2 = isk < singles_k.size() ? singles_k[isk].second : INT32_MAX;
        return std::min(r1, r2);
    };
    while (ic < crossing.size() || isj < singles_j.size() || isk < singles_k.size()) {
        if (isj < singles_j.size() && singles_j[isj].second == next_j()) {
            sq.strands.push_back(singles_j[isj++].first);
        } else if (isk < singles_k.size() && singles_k[isk].second == next_k()) {
            sq.strands.push_back(singles_k[isk++].first);
        } else if (ic < crossing.size() && crossing[ic].diag_rank_j == next_j() &&
                   crossing[ic].diag_rank_k == next_k()) {
            sq.strands.push_back(crossing[ic++]);
        } else {
            throw ComputeError("inconsistent strand order over the square");
        }
    }
    return sq;
}

// Arc pattern of one strand over the flipped square: (relative face, slots).
std::vector<std::pair<int, std::pair<int, int>>> flipped_pattern(int lo, int hi) {
    switch (lo * 10 + hi) {
        case 23: return {{0, {1, 2}}};
        case 24: return {{0, {1, 0}}, {1, {0, 1}}};
        case 25: return {{0, {1, 0}}, {1, {0, 2}}};
        case 34: return {{0, {2, 0}}, {1, {0, 1}}};
        case 35: return {{0, {2, 0}}, {1, {0, 2}}};
        case 45: return {{1, {1, 2}}};
    }
    throw ComputeError("bad connection type");
}

}  // namespace

GoodPositionLink reposition_link(const GoodPositionLink& link, int e) {
    SquareInfo sq = analyze_square(link, e);
    const IdealTriangulation& tri = link.surface();
    auto flipped = std::make_shared<IdealTriangulation>(tri.flip(e));

    std::vector<std::vector<TriangleArc>> arcs(tri.faces());
    for (int f = 0; f < tri.faces(); ++f)
        if (f != sq.fj && f != sq.fk) arcs[f] = link.arcs[f];
    for (int g = 0; g < static_cast<int>(sq.strands.size()); ++g) {
        const Strand& s = sq.strands[g];
        for (const auto& [rel, slots] : flipped_pattern(s.lo, s.hi)) {
            int face = rel == 0 ? sq.fj : sq.fk;
            arcs[face].push_back({slots.first, slots.second, g});
        }
    }
    std::map<int, std::vector<Slice>> words;
    for (int i = 0; i < tri.edges(); ++i)
        if (i != e) words[i] = link.words[i].slices();
    return make_link(std::move(flipped), std::move(arcs), std::move(words));
}

QTElement transfer_trace(const GoodPositionLink& link, int e, const BoundaryState& s,
                         const TraceOptions& opts) {
    SquareInfo sq = analyze_square(link, e);
    GoodPositionLink moved = reposition_link(link, e);
    const IdealTriangulation& tri = moved.surface();
    validate_state(moved, s);

    auto tcomm = tri.triangle_commutation();

    // enumerate signs on every arc end except those on the diagonal, whose
    // internal sum is already folded into the blocks
    struct Point {
        int face, pos, ordinal;
    };
    std::vector<std::vector<std::vector<int>>> pids(tri.faces());
    std::vector<Point> points;
    for (int f = 0; f < tri.faces(); ++f) {
        pids[f].assign(3, {});
        for (int pos = 0; pos < 3; ++pos) {
            int width = slot_width(moved, IdealTriangulation::slot_id(f, pos));
            bool diag = (f == sq.fj || f == sq.fk) && pos == 0;
            for (int o = 0; o < width; ++o) {
                if (diag) {
                    pids[f][pos].push_back(-1);
                } else {
                    pids[f][pos].push_back(static_cast<int>(points.size()));
                    points.push_back({f, pos, o});
                }
            }
        }
    }
    if (!opts.allow_large && points.size() > 24)
        throw InputError("flip transfer: too many strand points (cap 24, use --force)");

    // arc-end bookkeeping per face, bottom-up per slot
    struct EndIdx {
        std::vector<std::vector<std::pair<int, bool>>> at_slot;  // (arc idx, is_in)
    };
    std::vector<std::vector<TriangleArc>> sorted_arcs(tri.faces());
    std::vector<EndIdx> ends(tri.faces());
    for (int f = 0; f < tri.faces(); ++f) {
        sorted_arcs[f] = moved.arcs[f];
        std::sort(sorted_arcs[f].begin(), sorted_arcs[f].end(),
                  [](const TriangleArc& x, const TriangleArc& y) { return x.elev < y.elev; });
        ends[f].at_slot.assign(3, {});
        for (int i = 0; i < static_cast<int>(sorted_arcs[f].size()); ++i) {
            ends[f].at_slot[sorted_arcs[f][i].slot_in].push_back({i, true});
            ends[f].at_slot[sorted_arcs[f][i].slot_out].push_back({i, false});
        }
    }

    std::vector<std::vector<std::pair<CrossinglessMatching, OmegaPoly>>> resolved(tri.edges());
    for (int i = 0; i < tri.edges(); ++i)
        if (i != e) resolved[i] = kauffman_resolve(moved.words[i]);

    std::vector<int> sign(points.size(), 0);
    QTElement total(tcomm);

    auto wall_signs = [&](int slot) {
        int f = IdealTriangulation::slot_face(slot), pos = IdealTriangulation::slot_pos(slot);
        std::vector<int> out;
        for (int pid : pids[f][pos]) out.push_back(sign[pid]);
        return out;
    };

    const long assignments = 1L << points.size();
    for (long bits = 0; bits < assignments; ++bits) {
        for (size_t i = 0; i < points.size(); ++i) sign[i] = (bits >> i) & 1 ? +1 : -1;

        OmegaPoly scalars(1);
        for (int i = 0; i < tri.edges() && !scalars.is_zero(); ++i) {
            if (i == e) continue;
            const EdgeRec& rec = tri.edge(i);
            std::vector<int> s0 = wall_signs(rec.slot0);
            std::vector<int> s1;
            if (!rec.boundary()) s1 = wall_signs(rec.slot1);
            else if (auto it = s.signs.find(i); it != s.signs.end()) s1 = it->second;
            OmegaPoly v;
            for (const auto& [m, w] : resolved[i]) v += w * eval_matching(m, s0, s1);
            scalars *= v;
        }
        if (scalars.is_zero()) continue;

        // ordered block product over the square strands
        QTElement acc = QTElement::one(tcomm);
        bool dead = false;
        for (int g = 0; g < static_cast<int>(sq.strands.size()) && !dead; ++g) {
            const Strand& st = sq.strands[g];
            auto end_sign = [&](int role) {
                int rf = role_face(true, role);
                int face = rf == 0 ? sq.fj : sq.fk;
                int pos = role_slot(true, role, rf);
                // the strand's arc in this face sits at rank g of the merged order
                const auto& lst = ends[face].at_slot[pos];
                for (size_t o = 0; o < lst.size(); ++o)
                    if (sorted_arcs[face][lst[o].first].elev == g)
                        return sign[pids[face][pos][o]];
                throw ComputeError("strand endpoint not found");
            };
            Block blk = flip_block_target(st.lo, st.hi, end_sign(st.lo), end_sign(st.hi));
            if (blk.empty()) {
                dead = true;
                break;
            }
            QTElement be(tcomm);
            for (const BlockTerm& term : blk) {
                std::vector<std::pair<int, int>> factors;
                for (const auto& [role, exp] : term.t1) {
                    int rf = 0;
                    int pos = role_slot(true, role, rf);
                    factors.emplace_back(IdealTriangulation::slot_id(sq.fj, pos), exp);
                }
                for (const auto& [role, exp] : term.t2) {
                    int rf = 1;
                    int pos = role_slot(true, role, rf);
                    factors.emplace_back(IdealTriangulation::slot_id(sq.fk, pos), exp);
                }
                be.add_term(weyl_order(factors, *tcomm));
            }
            acc = acc * be;
        }
        if (dead) continue;

        // remaining faces contribute their usual ordered arc products
        QTMonomial rest{OmegaPoly(1), ExpVec(3 * tri.faces(), 0)};
        for (int f = 0; f < tri.faces() && !rest.is_zero(); ++f) {
            if (f == sq.fj || f == sq.fk) continue;
            std::vector<StatedArc> stated;
            for (int i = 0; i < static_cast<int>(sorted_arcs[f].size()); ++i) {
                const TriangleArc& a = sorted_arcs[f][i];
                auto end_sign = [&](int pos) {
                    const auto& lst = ends[f].at_slot[pos];
                    for (size_t o = 0; o < lst.size(); ++o)
                        if (lst[o].first == i) return sign[pids[f][pos][o]];
                    throw ComputeError("arc endpoint not found");
                };
                stated.push_back({a, end_sign(a.slot_in), end_sign(a.slot_out)});
            }
            rest = qt_mul(rest, face_trace(tri, f, stated), *tcomm);
        }
        if (rest.is_zero()) continue;

        QTElement contribution = acc * QTElement::from_monomial(tcomm, rest);
        total += contribution * scalars;
    }
    return tri.tensor_to_edge(total);
}

}  // namespace qtrace
