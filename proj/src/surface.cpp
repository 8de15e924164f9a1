#include "qtrace/surface.hpp"

#include <algorithm>
#include <sstream>

namespace qtrace {

std::string IdealTriangulation::slot_str(int s) {
    std::ostringstream os;
    os << "(" << slot_face(s) + 1 << "," << slot_pos(s) + 1 << ")";
    return os.str();
}

IdealTriangulation IdealTriangulation::build(int faces, std::vector<EdgeRec> edges) {
    if (faces < 0) throw InputError("negative face count");
    IdealTriangulation t;
    t.m_ = faces;
    t.edges_ = std::move(edges);
    t.edge_of_slot_.assign(static_cast<size_t>(3) * faces, -1);

    auto claim = [&](int s, int e) {
        if (s < 0 || s >= 3 * faces)
            throw InputError("edge '" + t.edges_[e].name + "' references a slot outside the surface");
        if (t.edge_of_slot_[s] >= 0)
            throw InputError("slot " + slot_str(s) + " glued twice");
        t.edge_of_slot_[s] = e;
    };
    for (int e = 0; e < t.edges(); ++e) {
        const EdgeRec& r = t.edges_[e];
        claim(r.slot0, e);
        if (!r.boundary()) {
            if (r.slot1 == r.slot0)
                throw InputError("slot " + slot_str(r.slot0) + " glued to itself");
            claim(r.slot1, e);
        }
        for (int f = 0; f < e; ++f)
            if (t.edges_[f].name == r.name)
                throw InputError("duplicate edge name '" + r.name + "'");
    }
    for (int s = 0; s < 3 * faces; ++s)
        if (t.edge_of_slot_[s] < 0)
            throw InputError("slot " + slot_str(s) + " not covered by any edge");
    return t;
}

int IdealTriangulation::partner_slot(int s) const {
    const EdgeRec& r = edges_[edge_of_slot_[s]];
    if (r.boundary()) return -1;
    return r.slot0 == s ? r.slot1 : r.slot0;
}

int IdealTriangulation::wall_of_slot(int s) const {
    return edges_[edge_of_slot_[s]].slot0 == s ? 0 : 1;
}

int IdealTriangulation::edge_index(const std::string& name) const {
    for (int e = 0; e < edges(); ++e)
        if (edges_[e].name == name) return e;
    throw InputError("unknown edge '" + name + "'");
}

std::vector<std::vector<int>> IdealTriangulation::sigma() const {
    const int n = edges();
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int j = 0; j < m_; ++j)
        for (int p = 0; p < 3; ++p) {
            int first = edge_of_slot_[slot_id(j, p)];
            int second = edge_of_slot_[slot_id(j, (p + 1) % 3)];
            a[first][second] += 1;
        }
    std::vector<std::vector<int>> s(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s[i][j] = a[i][j] - a[j][i];
    return s;
}

std::shared_ptr<const CommutationMatrix> IdealTriangulation::edge_commutation() const {
    if (!edge_comm_) {
        auto s = sigma();
        auto c = std::make_shared<CommutationMatrix>(edges());
        for (int i = 0; i < edges(); ++i)
            for (int j = i + 1; j < edges(); ++j) c->set(i, j, s[i][j]);
        edge_comm_ = std::move(c);
    }
    return edge_comm_;
}

std::shared_ptr<const CommutationMatrix> IdealTriangulation::triangle_commutation() const {
    if (!tri_comm_) {
        auto c = std::make_shared<CommutationMatrix>(3 * m_);
        for (int j = 0; j < m_; ++j)
            for (int p = 0; p < 3; ++p) c->set(slot_id(j, p), slot_id(j, (p + 1) % 3), 1);
        tri_comm_ = std::move(c);
    }
    return tri_comm_;
}

std::optional<std::vector<int>> IdealTriangulation::balanced(const ExpVec& k) const {
    if (static_cast<int>(k.size()) != edges())
        throw ComputeError("exponent vector length does not match edge count");
    for (int j = 0; j < m_; ++j) {
        int sum = 0;
        for (int p = 0; p < 3; ++p) sum += k[edge_of_slot_[slot_id(j, p)]];
        if (sum % 2 != 0) return std::nullopt;
    }
    std::vector<int> parity(k.size());
    for (size_t i = 0; i < k.size(); ++i) parity[i] = ((k[i] % 2) + 2) % 2;
    return parity;
}

QTMonomial IdealTriangulation::edge_embed(const ExpVec& k) const {
    if (static_cast<int>(k.size()) != edges())
        throw ComputeError("exponent vector length does not match edge count");
    std::vector<std::pair<int, int>> factors;
    for (int e = 0; e < edges(); ++e) {
        if (k[e] == 0) continue;
        factors.emplace_back(edges_[e].slot0, k[e]);
        if (!edges_[e].boundary()) factors.emplace_back(edges_[e].slot1, k[e]);
    }
    return weyl_order(factors, *triangle_commutation());
}

QTElement IdealTriangulation::tensor_to_edge(const QTElement& x) const {
    if (!(x.comm() == *triangle_commutation()))
        throw ComputeError("element does not live in this surface's triangle tensor algebra");
    QTElement r(edge_commutation());
    for (const auto& [exps, c] : x.terms()) {
        ExpVec k(edges(), 0);
        for (int e = 0; e < edges(); ++e) {
            const EdgeRec& rec = edges_[e];
            int k0 = exps[rec.slot0];
            if (!rec.boundary() && exps[rec.slot1] != k0)
                throw InputError("not in edge subalgebra: exponents " + std::to_string(k0) + " vs " +
                                 std::to_string(exps[rec.slot1]) + " across edge '" + rec.name + "'");
            k[e] = k0;
        }
        if (!balanced(k))
            throw InputError("not balanced: monomial violates the even face-sum condition");
        QTMonomial embed = edge_embed(k);
        if (!embed.coeff.is_unit())
            throw ComputeError("edge embedding produced a non-unit coefficient");
        // c * (slot monomial) = (c / embed.coeff) * [Z^k]; store in normal order
        OmegaPoly weyl_c = c * embed.coeff.unit_inverse();
        r.add_term(k, weyl_c * weyl_monomial(k, *edge_commutation()).coeff);
    }
    return r;
}

IdealTriangulation IdealTriangulation::flip(int e) const {
    const EdgeRec& rec = edges_[e];
    if (rec.boundary()) throw InputError("cannot flip boundary edge '" + rec.name + "'");
    int sj = rec.slot0, sk = rec.slot1;
    int j = slot_face(sj), k = slot_face(sk);
    if (j == k)
        throw InputError("cannot flip self-folded edge '" + rec.name + "'");
    int p = slot_pos(sj), r = slot_pos(sk);

    // Square sides, read clockwise from the diagonal in each face:
    //   face j: (p, p+1, p+2) = (diagonal, side5, side2)
    //   face k: (r, r+1, r+2) = (diagonal, side3, side4)
    // After the exchange:
    //   face j: (1, 2, 3) = (diagonal', side2, side3)
    //   face k: (1, 2, 3) = (diagonal', side4, side5)
    auto old_slot = [&](int face, int pos, int off) { return slot_id(face, (pos + off) % 3); };
    std::vector<std::pair<int, int>> remap = {
        {old_slot(j, p, 0), slot_id(j, 0)},  // old diagonal side in j reused for the new one
        {old_slot(j, p, 2), slot_id(j, 1)},  // side2
        {old_slot(k, r, 1), slot_id(j, 2)},  // side3
        {old_slot(k, r, 2), slot_id(k, 1)},  // side4
        {old_slot(j, p, 1), slot_id(k, 2)},  // side5
        {old_slot(k, r, 0), slot_id(k, 0)},
    };
    auto map_slot = [&](int s) {
        for (const auto& [from, to] : remap)
            if (s == from) return to;
        return s;
    };

    std::vector<EdgeRec> new_edges = edges_;
    for (auto& er : new_edges) {
        er.slot0 = map_slot(er.slot0);
        if (!er.boundary()) er.slot1 = map_slot(er.slot1);
    }
    return build(m_, std::move(new_edges));
}

}  // namespace qtrace
