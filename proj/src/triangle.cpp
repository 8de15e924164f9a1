#include "qtrace/triangle.hpp"

#include <algorithm>

namespace qtrace {

QTMonomial corner_arc_trace(const IdealTriangulation& tri, int face, int pos_in, int sign_in,
                            int pos_out, int sign_out) {
    if (pos_in == pos_out) throw InputError("corner arc must join two distinct sides");
    const CommutationMatrix& a = *tri.triangle_commutation();

    int first_pos, first_sign, second_pos, second_sign;
    if ((pos_in + 1) % 3 == pos_out) {
        first_pos = pos_in, first_sign = sign_in;
        second_pos = pos_out, second_sign = sign_out;
    } else {
        first_pos = pos_out, first_sign = sign_out;
        second_pos = pos_in, second_sign = sign_in;
    }
    if (first_sign == -1 && second_sign == +1) return {OmegaPoly(), ExpVec(a.size(), 0)};

    return weyl_order({{IdealTriangulation::slot_id(face, first_pos), first_sign},
                       {IdealTriangulation::slot_id(face, second_pos), second_sign}},
                      a);
}

OmegaPoly uturn_arc_trace(int sign_high, int sign_low) {
    if (sign_high == sign_low) return OmegaPoly();
    return sign_high == +1 ? skein_alpha() : skein_beta();
}

QTMonomial face_trace(const IdealTriangulation& tri, int face, std::vector<StatedArc> arcs) {
    std::sort(arcs.begin(), arcs.end(),
              [](const StatedArc& x, const StatedArc& y) { return x.arc.elev < y.arc.elev; });
    for (size_t i = 1; i < arcs.size(); ++i)
        if (arcs[i].arc.elev == arcs[i - 1].arc.elev)
            throw InputError("duplicate elevation within a face");

    const CommutationMatrix& a = *tri.triangle_commutation();
    QTMonomial acc{OmegaPoly(1), ExpVec(a.size(), 0)};
    for (const StatedArc& s : arcs) {
        QTMonomial m =
            corner_arc_trace(tri, face, s.arc.slot_in, s.sign_in, s.arc.slot_out, s.sign_out);
        if (m.is_zero()) return {OmegaPoly(), ExpVec(a.size(), 0)};
        acc = qt_mul(acc, m, a);
    }
    return acc;
}

}  // namespace qtrace
