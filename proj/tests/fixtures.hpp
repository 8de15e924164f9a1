// Shared test surfaces and links.
#pragma once

#include "qtrace/state_sum.hpp"

#include <array>
#include <memory>
#include <numeric>
#include <random>

namespace qtrace::fixtures {

// One triangle, all sides boundary; edge i sits at slot i.
inline std::shared_ptr<const IdealTriangulation> triangle() {
    auto slot = [](int f, int p) { return IdealTriangulation::slot_id(f, p); };
    return std::make_shared<IdealTriangulation>(IdealTriangulation::build(
        1, {{"1", slot(0, 0), -1}, {"2", slot(0, 1), -1}, {"3", slot(0, 2), -1}}));
}

// Once-punctured torus: two faces, slot (1,a) glued to (2,a). Edge names are
// chosen so the curve crossing edges 1 and 2 reproduces the classical
// Z1 Z2 + Z1^-1 Z2 + Z1^-1 Z2^-1 polynomial.
inline std::shared_ptr<const IdealTriangulation> punctured_torus() {
    auto slot = [](int f, int p) { return IdealTriangulation::slot_id(f, p); };
    return std::make_shared<IdealTriangulation>(IdealTriangulation::build(
        2, {{"1", slot(0, 2), slot(1, 2)},
            {"2", slot(0, 1), slot(1, 1)},
            {"3", slot(0, 0), slot(1, 0)}}));
}

// Ideal square: two faces glued along edge 1, sides 2..5 boundary.
// Face 1 carries (diagonal, side5, side2), face 2 (diagonal, side3, side4).
inline std::shared_ptr<const IdealTriangulation> square() {
    auto slot = [](int f, int p) { return IdealTriangulation::slot_id(f, p); };
    return std::make_shared<IdealTriangulation>(IdealTriangulation::build(
        2, {{"1", slot(0, 0), slot(1, 0)},
            {"5", slot(0, 1), -1},
            {"2", slot(0, 2), -1},
            {"3", slot(1, 1), -1},
            {"4", slot(1, 2), -1}}));
}

// The punctured-torus simple closed curve crossing edges 1 and 2 once.
inline GoodPositionLink torus_curve_10(std::shared_ptr<const IdealTriangulation> tri) {
    return make_link(std::move(tri), {{{1, 2, 0}}, {{1, 2, 0}}});
}

// A single strand across the square from side `lo` to side `hi` (2..5).
inline GoodPositionLink square_strand(std::shared_ptr<const IdealTriangulation> tri, int lo,
                                      int hi) {
    std::vector<std::vector<TriangleArc>> arcs(2);
    auto add = [&](int role) {
        switch (role) {
            case 2: arcs[0].push_back({2, 0, 0}); break;   // side2 <-> diagonal
            case 3: arcs[1].push_back({0, 1, 0}); break;   // diagonal <-> side3
            case 4: arcs[1].push_back({0, 2, 0}); break;   // diagonal <-> side4
            case 5: arcs[0].push_back({1, 0, 0}); break;   // side5 <-> diagonal
        }
    };
    if (lo == 2 && hi == 5) {
        arcs[0].push_back({2, 1, 0});
    } else if (lo == 3 && hi == 4) {
        arcs[1].push_back({1, 2, 0});
    } else {
        add(lo);
        add(hi);
    }
    return make_link(std::move(tri), std::move(arcs));
}

// Uniform random sign state on all boundary points.
inline BoundaryState random_state(const GoodPositionLink& link, std::mt19937& rng) {
    BoundaryState s;
    const IdealTriangulation& tri = link.surface();
    for (int e = 0; e < tri.edges(); ++e) {
        if (!tri.edge(e).boundary()) continue;
        int n = link.words[e].n1();
        if (n == 0) continue;
        auto& v = s.signs[e];
        for (int i = 0; i < n; ++i) v.push_back(rng() % 2 ? +1 : -1);
    }
    return s;
}

// Random multicurve on the punctured torus: edge crossing counts satisfying
// the triangle inequalities with even sum, arcs at random elevations.
inline GoodPositionLink random_torus_multicurve(std::shared_ptr<const IdealTriangulation> tri,
                                                std::mt19937& rng, int max_count = 3) {
    std::array<int, 3> k{};
    do {
        for (int& v : k) v = static_cast<int>(rng() % (max_count + 1));
    } while ((k[0] + k[1] + k[2]) % 2 != 0 || k[0] > k[1] + k[2] || k[1] > k[0] + k[2] ||
             k[2] > k[0] + k[1]);
    // corner counts between slot positions (a, a+1): edges sit at slots 2,1,0
    auto edge_at_pos = [&](int pos) { return pos == 2 ? 0 : pos == 1 ? 1 : 2; };
    std::array<int, 3> corner{};  // corner between positions (a, a+1)
    for (int a = 0; a < 3; ++a) {
        int i = edge_at_pos(a), j = edge_at_pos((a + 1) % 3), l = edge_at_pos((a + 2) % 3);
        corner[a] = (k[i] + k[j] - k[l]) / 2;
    }
    std::vector<std::vector<TriangleArc>> arcs(2);
    for (int f = 0; f < 2; ++f) {
        std::vector<TriangleArc> list;
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < corner[a]; ++c) list.push_back({a, (a + 1) % 3, 0});
        std::vector<int> elevs(list.size());
        std::iota(elevs.begin(), elevs.end(), 0);
        std::shuffle(elevs.begin(), elevs.end(), rng);
        for (size_t i = 0; i < list.size(); ++i) list[i].elev = elevs[i];
        arcs[f] = std::move(list);
    }
    return make_link(std::move(tri), std::move(arcs));
}

// Adds width-preserving tangle decorations: random crossings, small circles
// and zigzags.
inline GoodPositionLink random_decorate(const GoodPositionLink& link, std::mt19937& rng) {
    GoodPositionLink out = link;
    for (int e = 0; e < link.surface().edges(); ++e) {
        const TangleWord& w = out.words[e];
        std::vector<Slice> slices = w.slices();
        int width = w.n1();
        int extras = static_cast<int>(rng() % 3);
        for (int i = 0; i < extras; ++i) {
            int kind = static_cast<int>(rng() % 3);
            if (kind == 0 && width >= 2) {
                slices.push_back({rng() % 2 ? SliceKind::CrossOver : SliceKind::CrossUnder,
                                  1 + static_cast<int>(rng() % (width - 1))});
            } else if (kind == 1) {
                int p = 1 + static_cast<int>(rng() % (width + 1));
                slices.push_back({SliceKind::Cup, p});
                slices.push_back({SliceKind::Cap, p});
            } else if (width >= 1) {
                int p = 1 + static_cast<int>(rng() % width);
                slices.push_back({SliceKind::Cup, p + 1});
                slices.push_back({SliceKind::Cap, p});
            }
        }
        out.words[e] = TangleWord(w.n0(), std::move(slices));
    }
    validate_link(out);
    return out;
}

// All boundary states of a link.
inline std::vector<BoundaryState> enumerate_states(const GoodPositionLink& link) {
    const IdealTriangulation& tri = link.surface();
    std::vector<std::pair<int, int>> points;
    for (int e = 0; e < tri.edges(); ++e)
        if (tri.edge(e).boundary())
            for (int i = 0; i < link.words[e].n1(); ++i) points.emplace_back(e, i);
    std::vector<BoundaryState> out;
    for (long bits = 0; bits < (1L << points.size()); ++bits) {
        BoundaryState s;
        for (int e = 0; e < tri.edges(); ++e)
            if (tri.edge(e).boundary() && link.words[e].n1() > 0)
                s.signs[e].assign(link.words[e].n1(), +1);
        for (size_t i = 0; i < points.size(); ++i)
            if ((bits >> i) & 1) s.signs[points[i].first][points[i].second] = -1;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace qtrace::fixtures
