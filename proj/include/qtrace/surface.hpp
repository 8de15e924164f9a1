// Ideal triangulations: faces with clockwise side slots, an edge gluing,
// the sigma matrix, balanced monomials, the edge <-> triangle-tensor change
// of basis, and diagonal exchanges.
#pragma once

#include "qtrace/quantum_torus.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qtrace {

// One edge of the triangulation. slot0/slot1 are flat slot ids (3*face + pos);
// slot1 == -1 marks a boundary edge. The record order fixes the wall roles of
// the biangle sitting over this edge: wall 0 faces slot0, wall 1 faces slot1.
struct EdgeRec {
    std::string name;
    int slot0 = -1;
    int slot1 = -1;

    bool boundary() const { return slot1 < 0; }
    bool operator==(const EdgeRec&) const = default;
};

class IdealTriangulation {
  public:
    static IdealTriangulation build(int faces, std::vector<EdgeRec> edges);

    int faces() const { return m_; }
    int edges() const { return static_cast<int>(edges_.size()); }
    static int slot_id(int face, int pos) { return 3 * face + pos; }
    static int slot_face(int s) { return s / 3; }
    static int slot_pos(int s) { return s % 3; }
    static std::string slot_str(int s);

    const EdgeRec& edge(int e) const { return edges_[e]; }
    int edge_at_slot(int s) const { return edge_of_slot_[s]; }
    // -1 for boundary slots
    int partner_slot(int s) const;
    // 0 if s is the record-first slot of its edge, 1 otherwise
    int wall_of_slot(int s) const;
    int edge_index(const std::string& name) const;

    // sigma_ij = a_ij - a_ji, counting angular sectors with lambda_i first
    // counterclockwise. At the corner between clockwise-consecutive slots
    // (j,a) and (j,a+1), the counterclockwise-first side is slot (j,a).
    std::vector<std::vector<int>> sigma() const;
    std::shared_ptr<const CommutationMatrix> edge_commutation() const;
    // 3m generators; a((j,a),(j,a+1)) = 1 cyclically inside each face
    std::shared_ptr<const CommutationMatrix> triangle_commutation() const;

    // parity class (k_i mod 2) when every face sees an even exponent sum
    std::optional<std::vector<int>> balanced(const ExpVec& k) const;

    // image of the Weyl edge monomial [Z^k] in the triangle tensor algebra
    QTMonomial edge_embed(const ExpVec& k) const;
    // inverse on the edge subalgebra, result in normal order over the edges
    QTElement tensor_to_edge(const QTElement& x) const;

    // diagonal exchange at interior edge e; edge names and order are preserved
    IdealTriangulation flip(int e) const;

    bool operator==(const IdealTriangulation& o) const {
        return m_ == o.m_ && edges_ == o.edges_;
    }

  private:
    int m_ = 0;
    std::vector<EdgeRec> edges_;
    std::vector<int> edge_of_slot_;

    mutable std::shared_ptr<const CommutationMatrix> tri_comm_;
    mutable std::shared_ptr<const CommutationMatrix> edge_comm_;
};

}  // namespace qtrace
