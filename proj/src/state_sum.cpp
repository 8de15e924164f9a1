#include "qtrace/state_sum.hpp"

#include <algorithm>
#include <numeric>

namespace qtrace {

namespace {

struct EndRef {
    int arc = -1;   // index into the face's arc list
    bool in_end = false;
    int elev = 0;
};

// Flattened point layout for one link: every arc end, grouped by slot and
// sorted bottom-up.
struct PointLayout {
    std::vector<std::vector<EndRef>> ends;  // per slot
    std::vector<int> offset;                // per slot
    int total = 0;
    // per face: arcs sorted by elevation; per arc end: its point id
    std::vector<std::vector<int>> order;    // per face, arc indices by elevation
    std::vector<std::vector<int>> pid_in, pid_out;

    int pid(int slot, int ordinal) const { return offset[slot] + ordinal; }
};

PointLayout layout(const GoodPositionLink& link) {
    const IdealTriangulation& tri = link.surface();
    PointLayout L;
    L.ends.resize(static_cast<size_t>(3) * tri.faces());
    L.pid_in.resize(tri.faces());
    L.pid_out.resize(tri.faces());
    L.order.resize(tri.faces());
    for (int j = 0; j < tri.faces(); ++j) {
        const auto& as = link.arcs[j];
        L.pid_in[j].assign(as.size(), -1);
        L.pid_out[j].assign(as.size(), -1);
        L.order[j].resize(as.size());
        std::iota(L.order[j].begin(), L.order[j].end(), 0);
        std::sort(L.order[j].begin(), L.order[j].end(),
                  [&](int x, int y) { return as[x].elev < as[y].elev; });
        for (int i = 0; i < static_cast<int>(as.size()); ++i) {
            L.ends[tri.slot_id(j, as[i].slot_in)].push_back({i, true, as[i].elev});
            L.ends[tri.slot_id(j, as[i].slot_out)].push_back({i, false, as[i].elev});
        }
    }
    L.offset.resize(L.ends.size());
    for (size_t s = 0; s < L.ends.size(); ++s) {
        std::sort(L.ends[s].begin(), L.ends[s].end(),
                  [](const EndRef& x, const EndRef& y) { return x.elev < y.elev; });
        L.offset[s] = L.total;
        L.total += static_cast<int>(L.ends[s].size());
        int face = IdealTriangulation::slot_face(static_cast<int>(s));
        for (int o = 0; o < static_cast<int>(L.ends[s].size()); ++o) {
            const EndRef& e = L.ends[s][o];
            (e.in_end ? L.pid_in : L.pid_out)[face][e.arc] = L.offset[s] + o;
        }
    }
    return L;
}

}  // namespace

int slot_width(const GoodPositionLink& link, int slot) {
    int face = IdealTriangulation::slot_face(slot);
    int pos = IdealTriangulation::slot_pos(slot);
    int w = 0;
    for (const TriangleArc& a : link.arcs[face]) w += (a.slot_in == pos) + (a.slot_out == pos);
    return w;
}

void validate_link(const GoodPositionLink& link) {
    const IdealTriangulation& tri = link.surface();
    if (static_cast<int>(link.arcs.size()) != tri.faces())
        throw InputError("arc table does not cover every face");
    if (static_cast<int>(link.words.size()) != tri.edges())
        throw InputError("word table does not cover every edge");
    for (int j = 0; j < tri.faces(); ++j) {
        std::vector<int> elevs;
        for (const TriangleArc& a : link.arcs[j]) {
            if (a.slot_in < 0 || a.slot_in > 2 || a.slot_out < 0 || a.slot_out > 2)
                throw InputError("arc slot out of range in face " + std::to_string(j + 1));
            if (a.slot_in == a.slot_out)
                throw InputError("arc joins a side to itself in face " + std::to_string(j + 1));
            elevs.push_back(a.elev);
        }
        std::sort(elevs.begin(), elevs.end());
        if (std::adjacent_find(elevs.begin(), elevs.end()) != elevs.end())
            throw InputError("duplicate arc elevation in face " + std::to_string(j + 1));
    }
    for (int e = 0; e < tri.edges(); ++e) {
        const EdgeRec& rec = tri.edge(e);
        const TangleWord& w = link.words[e];
        if (w.n0() != slot_width(link, rec.slot0))
            throw InputError("edge '" + rec.name + "': word has " + std::to_string(w.n0()) +
                             " wall-0 endpoints but the glued side carries " +
                             std::to_string(slot_width(link, rec.slot0)));
        if (!rec.boundary() && w.n1() != slot_width(link, rec.slot1))
            throw InputError("edge '" + rec.name + "': word has " + std::to_string(w.n1()) +
                             " wall-1 endpoints but the glued side carries " +
                             std::to_string(slot_width(link, rec.slot1)));
    }
}

void validate_state(const GoodPositionLink& link, const BoundaryState& s) {
    const IdealTriangulation& tri = link.surface();
    for (int e = 0; e < tri.edges(); ++e) {
        if (!tri.edge(e).boundary()) continue;
        int want = link.words[e].n1();
        auto it = s.signs.find(e);
        int got = it == s.signs.end() ? 0 : static_cast<int>(it->second.size());
        if (got != want)
            throw InputError("edge '" + tri.edge(e).name + "': state assigns " +
                             std::to_string(got) + " signs but the link has " +
                             std::to_string(want) + " boundary points there");
    }
    for (const auto& [e, signs] : s.signs) {
        if (e < 0 || e >= tri.edges() || !tri.edge(e).boundary())
            throw InputError("state references a non-boundary edge");
        for (int v : signs)
            if (v != 1 && v != -1) throw InputError("state signs must be +1 or -1");
    }
}

GoodPositionLink make_link(std::shared_ptr<const IdealTriangulation> tri,
                           std::vector<std::vector<TriangleArc>> arcs,
                           std::map<int, std::vector<Slice>> raw_words) {
    GoodPositionLink link;
    link.tri = std::move(tri);
    link.arcs = std::move(arcs);
    link.arcs.resize(link.surface().faces());
    link.words.reserve(link.surface().edges());
    for (int e = 0; e < link.surface().edges(); ++e) {
        int n0 = slot_width(link, link.surface().edge(e).slot0);
        auto it = raw_words.find(e);
        link.words.push_back(it == raw_words.end() ? TangleWord::identity(n0)
                                                   : TangleWord(n0, it->second));
    }
    validate_link(link);
    return link;
}

namespace {

struct BiangleEval {
    std::vector<std::pair<CrossinglessMatching, OmegaPoly>> matchings;

    OmegaPoly eval(const std::vector<int>& s0, const std::vector<int>& s1) const {
        OmegaPoly total;
        for (const auto& [m, w] : matchings) total += w * eval_matching(m, s0, s1);
        return total;
    }
};

struct TraceJob {
    const GoodPositionLink& link;
    const IdealTriangulation& tri;
    PointLayout L;
    std::vector<BiangleEval> biangles;           // per edge
    std::vector<const std::vector<int>*> bstate; // per edge, wall-1 boundary signs or null
    std::vector<std::vector<int>> ready;         // edges scored after finishing face j
    std::vector<int> signs;                      // per point, 0 = unassigned
    // Sign constraints from biangles with a unique matching: a partner point
    // (or fixed boundary sign) plus whether the pair returns to one wall.
    struct PairRule {
        int partner = -1;     // point id, or -1 when the far side is a fixed sign
        int fixed_sign = 0;   // nonzero for boundary partners
        bool same_wall = false;
    };
    std::vector<std::vector<PairRule>> forced;   // per point
    QTElement acc;

    TraceJob(const GoodPositionLink& lk, const BoundaryState& s)
        : link(lk), tri(lk.surface()), L(layout(lk)), acc(lk.surface().triangle_commutation()) {
        validate_link(lk);
        validate_state(lk, s);
        biangles.resize(tri.edges());
        bstate.resize(tri.edges(), nullptr);
        ready.resize(tri.faces());
        forced.assign(L.total, {});
        for (int e = 0; e < tri.edges(); ++e) {
            biangles[e].matchings = kauffman_resolve(lk.words[e]);
            const EdgeRec& rec = tri.edge(e);
            int last = IdealTriangulation::slot_face(rec.slot0);
            if (!rec.boundary())
                last = std::max(last, IdealTriangulation::slot_face(rec.slot1));
            else if (auto it = s.signs.find(e); it != s.signs.end())
                bstate[e] = &it->second;
            if (tri.faces() > 0) ready[last].push_back(e);
            if (biangles[e].matchings.size() == 1) add_pair_rules(e);
        }
        signs.assign(L.total, 0);
    }

    // Point id of a wall endpoint, or -1 for a boundary endpoint.
    int point_of_endpoint(int e, int ep, int n0) const {
        const EdgeRec& rec = tri.edge(e);
        if (ep < n0) return L.pid(rec.slot0, ep);
        if (rec.boundary()) return -1;
        return L.pid(rec.slot1, ep - n0);
    }

    void add_pair_rules(int e) {
        const CrossinglessMatching& m = biangles[e].matchings.front().first;
        for (int ep = 0; ep < static_cast<int>(m.partner.size()); ++ep) {
            int q = m.partner[ep];
            if (q < ep) continue;
            bool same_wall = (ep < m.n0) == (q < m.n0);
            int a = point_of_endpoint(e, ep, m.n0);
            int b = point_of_endpoint(e, q, m.n0);
            auto fixed_of = [&](int endpoint) {
                return bstate[e] ? (*bstate[e])[endpoint - m.n0] : 0;
            };
            if (a >= 0 && b >= 0) {
                forced[a].push_back({b, 0, same_wall});
                forced[b].push_back({a, 0, same_wall});
            } else if (a >= 0) {
                forced[a].push_back({-1, fixed_of(q), same_wall});
            } else if (b >= 0) {
                forced[b].push_back({-1, fixed_of(ep), same_wall});
            }
        }
    }

    bool pair_ok(int point) const {
        for (const PairRule& r : forced[point]) {
            int other = r.partner >= 0 ? signs[r.partner] : r.fixed_sign;
            if (other == 0) continue;
            if (r.same_wall ? signs[point] == other : signs[point] != other) return false;
        }
        return true;
    }

    std::vector<int> wall_signs(int slot) const {
        std::vector<int> out;
        out.reserve(L.ends[slot].size());
        for (int o = 0; o < static_cast<int>(L.ends[slot].size()); ++o)
            out.push_back(signs[L.pid(slot, o)]);
        return out;
    }

    OmegaPoly edge_scalar(int e) const {
        const EdgeRec& rec = tri.edge(e);
        std::vector<int> s0 = wall_signs(rec.slot0);
        std::vector<int> s1;
        if (!rec.boundary()) s1 = wall_signs(rec.slot1);
        else if (bstate[e]) s1 = *bstate[e];
        return biangles[e].eval(s0, s1);
    }

    // Contraction with eager pruning: faces in index order, arcs by elevation,
    // each finished face scores the biangles it completes.
    void contract(int face, int arc_ord, QTMonomial mono, OmegaPoly scalars) {
        if (face == tri.faces()) {
            acc.add_term(mono.exps, mono.coeff * scalars);
            return;
        }
        const auto& as = link.arcs[face];
        if (arc_ord == static_cast<int>(L.order[face].size())) {
            for (int e : ready[face]) {
                scalars *= edge_scalar(e);
                if (scalars.is_zero()) return;
            }
            contract(face + 1, 0, std::move(mono), std::move(scalars));
            return;
        }
        int ai = L.order[face][arc_ord];
        const TriangleArc& arc = as[ai];
        for (int sin : {+1, -1})
            for (int sout : {+1, -1}) {
                QTMonomial m = corner_arc_trace(tri, face, arc.slot_in, sin, arc.slot_out, sout);
                if (m.is_zero()) continue;
                signs[L.pid_in[face][ai]] = sin;
                signs[L.pid_out[face][ai]] = sout;
                if (!pair_ok(L.pid_in[face][ai]) || !pair_ok(L.pid_out[face][ai])) continue;
                contract(face, arc_ord + 1, qt_mul(mono, m, *tri.triangle_commutation()), scalars);
            }
        signs[L.pid_in[face][ai]] = 0;
        signs[L.pid_out[face][ai]] = 0;
    }

    void enumerate_naive() {
        const long total_assignments = 1L << L.total;
        for (long bits = 0; bits < total_assignments; ++bits) {
            for (int p = 0; p < L.total; ++p) signs[p] = (bits >> p) & 1 ? +1 : -1;
            QTMonomial mono{OmegaPoly(1), ExpVec(3 * tri.faces(), 0)};
            for (int j = 0; j < tri.faces() && !mono.is_zero(); ++j) {
                std::vector<StatedArc> stated;
                for (const TriangleArc& a : link.arcs[j]) {
                    int ai = static_cast<int>(&a - link.arcs[j].data());
                    stated.push_back({a, signs[L.pid_in[j][ai]], signs[L.pid_out[j][ai]]});
                }
                mono = qt_mul(mono, face_trace(tri, j, stated), *tri.triangle_commutation());
            }
            if (mono.is_zero()) continue;
            OmegaPoly scalars(1);
            for (int e = 0; e < tri.edges() && !scalars.is_zero(); ++e) scalars *= edge_scalar(e);
            acc.add_term(mono.exps, mono.coeff * scalars);
        }
    }
};

}  // namespace

QTElement quantum_trace_tensor(const GoodPositionLink& link, const BoundaryState& s,
                               const TraceOptions& opts) {
    TraceJob job(link, s);
    if (!opts.allow_large && job.L.total > 24)
        throw InputError("link has " + std::to_string(job.L.total) +
                         " triangle-side points; the cap is 24 (use --force to override)");
    if (opts.naive) {
        job.enumerate_naive();
    } else if (link.surface().faces() == 0) {
        OmegaPoly scalars(1);
        for (int e = 0; e < link.surface().edges(); ++e) scalars *= job.edge_scalar(e);
        job.acc.add_term(ExpVec(0, 0), scalars);
    } else {
        job.contract(0, 0, QTMonomial{OmegaPoly(1), ExpVec(3 * link.surface().faces(), 0)},
                     OmegaPoly(1));
    }
    return job.acc;
}

QTElement quantum_trace(const GoodPositionLink& link, const BoundaryState& s,
                        const TraceOptions& opts) {
    return link.surface().tensor_to_edge(quantum_trace_tensor(link, s, opts));
}

GoodPositionLink superpose(const GoodPositionLink& k1, const GoodPositionLink& k2) {
    if (!(k1.surface() == k2.surface()))
        throw InputError("superpose: links live over different triangulations");
    GoodPositionLink out;
    out.tri = k1.tri;
    out.arcs.resize(k1.surface().faces());
    for (int j = 0; j < k1.surface().faces(); ++j) {
        std::vector<TriangleArc> lower = k1.arcs[j], upper = k2.arcs[j];
        auto by_elev = [](const TriangleArc& x, const TriangleArc& y) { return x.elev < y.elev; };
        std::sort(lower.begin(), lower.end(), by_elev);
        std::sort(upper.begin(), upper.end(), by_elev);
        int rank = 0;
        for (TriangleArc a : lower) { a.elev = rank++; out.arcs[j].push_back(a); }
        for (TriangleArc a : upper) { a.elev = rank++; out.arcs[j].push_back(a); }
    }
    for (int e = 0; e < k1.surface().edges(); ++e) {
        const TangleWord& w1 = k1.words[e];
        const TangleWord& w2 = k2.words[e];
        std::vector<Slice> slices = w1.slices();
        for (Slice s : w2.slices()) {
            s.pos += w1.n1();
            slices.push_back(s);
        }
        out.words.emplace_back(w1.n0() + w2.n0(), std::move(slices));
    }
    validate_link(out);
    return out;
}

BoundaryState superpose_states(const GoodPositionLink& k1, const BoundaryState& s1,
                               const BoundaryState& s2) {
    BoundaryState out = s1;
    for (const auto& [e, signs] : s2.signs) {
        auto& dst = out.signs[e];
        dst.insert(dst.end(), signs.begin(), signs.end());
    }
    (void)k1;
    return out;
}

ExpVec leading_intersection_vector(const GoodPositionLink& link) {
    validate_link(link);
    for (int e = 0; e < link.surface().edges(); ++e)
        if (!link.words[e].slices().empty())
            throw InputError("not a simple diagram: edge '" + link.surface().edge(e).name +
                             "' carries a non-identity tangle word");
    ExpVec k(link.surface().edges(), 0);
    for (int e = 0; e < link.surface().edges(); ++e) k[e] = link.words[e].n0();
    return k;
}

std::vector<LinkComponent> link_components(const GoodPositionLink& link) {
    validate_link(link);
    const IdealTriangulation& tri = link.surface();
    PointLayout L = layout(link);

    std::vector<CrossinglessMatching> conn(tri.edges());
    std::vector<LinkComponent> out;
    for (int e = 0; e < tri.edges(); ++e) {
        conn[e] = strand_connectivity(link.words[e]);
        for (int c = 0; c < conn[e].loops; ++c) {
            LinkComponent lc;
            lc.closed = true;
            lc.biangle_circle = true;
            lc.circle_edge = e;
            out.push_back(lc);
        }
    }

    // Map each face point to its biangle wall point and back.
    // Wall point key: (edge, endpoint id in the word's numbering).
    auto wall_of_point = [&](int slot, int ordinal) {
        int e = tri.edge_at_slot(slot);
        int wall = tri.wall_of_slot(slot);
        int ep = wall == 0 ? ordinal : conn[e].n0 + ordinal;
        return std::pair<int, int>(e, ep);
    };
    auto point_of_wall = [&](int e, int ep) -> int {
        const EdgeRec& rec = tri.edge(e);
        int slot = ep < conn[e].n0 ? rec.slot0 : rec.slot1;
        int ordinal = ep < conn[e].n0 ? ep : ep - conn[e].n0;
        if (slot < 0) return -1;  // boundary endpoint
        return L.pid(slot, ordinal);
    };
    std::vector<int> slot_of_pid(L.total), ord_of_pid(L.total);
    for (size_t s = 0; s < L.ends.size(); ++s)
        for (int o = 0; o < static_cast<int>(L.ends[s].size()); ++o) {
            slot_of_pid[L.pid(static_cast<int>(s), o)] = static_cast<int>(s);
            ord_of_pid[L.pid(static_cast<int>(s), o)] = o;
        }
    auto arc_other_end = [&](int pid) {
        int slot = slot_of_pid[pid];
        int face = IdealTriangulation::slot_face(slot);
        const EndRef& er = L.ends[slot][ord_of_pid[pid]];
        return er.in_end ? L.pid_out[face][er.arc] : L.pid_in[face][er.arc];
    };

    std::vector<bool> seen(L.total, false);
    auto walk = [&](int start, bool closed) {
        LinkComponent lc;
        lc.closed = closed;
        int p = start;
        while (true) {
            if (seen[p]) break;
            seen[p] = true;
            int q = arc_other_end(p);
            seen[q] = true;
            int slot_p = slot_of_pid[p];
            lc.passages.push_back({tri.edge_at_slot(slot_p),
                                   IdealTriangulation::slot_face(slot_p),
                                   IdealTriangulation::slot_pos(slot_p),
                                   IdealTriangulation::slot_pos(slot_of_pid[q])});
            auto [e, ep] = wall_of_point(slot_of_pid[q], ord_of_pid[q]);
            int next = point_of_wall(e, conn[e].partner[ep]);
            if (next < 0) break;  // ran into the surface boundary
            p = next;
            if (closed && p == start) break;
        }
        out.push_back(std::move(lc));
    };

    // Open components first: start from points whose biangle partner is a
    // boundary endpoint, walking inward.
    for (int e = 0; e < tri.edges(); ++e) {
        if (!tri.edge(e).boundary()) continue;
        for (int ep = conn[e].n0; ep < static_cast<int>(conn[e].partner.size()); ++ep) {
            int p = point_of_wall(e, conn[e].partner[ep]);
            if (p >= 0 && !seen[p]) walk(p, false);
        }
    }
    for (int p = 0; p < L.total; ++p)
        if (!seen[p]) walk(p, true);
    return out;
}

}  // namespace qtrace
