#include "qtrace/classical.hpp"

#include <cmath>
#include <sstream>

namespace qtrace {

Mat2 turn_matrix(const TurnStep& step) {
    long long e = (step.t % 2 == 0) ? 1 : -1;
    switch (step.kind) {
        case TurnKind::Left: return {{{e, e}, {0, e}}};
        case TurnKind::Right: return {{{e, 0}, {e, e}}};
        case TurnKind::Uturn: return {{{0, e}, {-e, 0}}};
    }
    throw ComputeError("unreachable turn kind");
}

double holonomy_trace(const std::vector<TurnStep>& steps, const std::vector<double>& shear) {
    if (steps.empty()) throw InputError("empty turn sequence");
    std::array<std::array<double, 2>, 2> acc = {{{1.0, 0.0}, {0.0, 1.0}}};
    for (const TurnStep& st : steps) {
        if (st.edge < 0 || st.edge >= static_cast<int>(shear.size()))
            throw InputError("turn step references edge without a shear value");
        double x = shear[st.edge];
        if (!(x > 0.0)) throw InputError("shear values must be positive");
        double r = std::sqrt(x);
        Mat2 m = turn_matrix(st);
        std::array<std::array<double, 2>, 2> f = {{{r * m[0][0], r * m[0][1]},
                                                   {m[1][0] / r, m[1][1] / r}}};
        std::array<std::array<double, 2>, 2> next{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                next[i][j] = acc[i][0] * f[0][j] + acc[i][1] * f[1][j];
        acc = next;
    }
    return acc[0][0] + acc[1][1];
}

std::map<ExpVec, Int> classical_state_sum(const std::vector<TurnStep>& steps, int edges) {
    if (steps.empty()) throw InputError("empty turn sequence");
    const int k = static_cast<int>(steps.size());
    std::vector<Mat2> mats(k);
    for (int j = 0; j < k; ++j) {
        if (steps[j].edge < 0 || steps[j].edge >= edges)
            throw InputError("turn step references an unknown edge");
        mats[j] = turn_matrix(steps[j]);
    }
    std::map<ExpVec, Int> out;
    for (long bits = 0; bits < (1L << k); ++bits) {
        long long coeff = 1;
        ExpVec exps(edges, 0);
        for (int j = 0; j < k && coeff != 0; ++j) {
            int sj = (bits >> j) & 1 ? +1 : -1;
            int sn = (bits >> ((j + 1) % k)) & 1 ? +1 : -1;
            coeff *= mats[j][sj == +1 ? 0 : 1][sn == +1 ? 0 : 1];
            exps[steps[j].edge] += sj;
        }
        if (coeff == 0) continue;
        Int& acc = out[exps];
        acc += coeff;
        if (acc == 0) out.erase(exps);
    }
    return out;
}

double eval_classical(const std::map<ExpVec, Int>& poly, const std::vector<double>& shear) {
    double total = 0.0;
    for (const auto& [exps, c] : poly) {
        double term = static_cast<double>(c);
        for (size_t e = 0; e < exps.size(); ++e) {
            if (exps[e] == 0) continue;
            if (e >= shear.size() || !(shear[e] > 0.0))
                throw InputError("missing or nonpositive shear value");
            term *= std::pow(std::sqrt(shear[e]), exps[e]);
        }
        total += term;
    }
    return total;
}

std::vector<std::vector<TurnStep>> link_turn_sequences(const GoodPositionLink& link) {
    for (int e = 0; e < link.surface().edges(); ++e) {
        if (link.words[e].crossings() > 0)
            throw InputError("not an immersed-curve diagram: edge '" +
                             link.surface().edge(e).name + "' has crossings");
        // every strand through a biangle must run wall to wall; caps and cups
        // may only close up into whole circles
        CrossinglessMatching conn = strand_connectivity(link.words[e]);
        for (int ep = 0; ep < static_cast<int>(conn.partner.size()); ++ep)
            if ((ep < conn.n0) == (conn.partner[ep] < conn.n0))
                throw InputError("not an immersed-curve diagram: edge '" +
                                 link.surface().edge(e).name + "' has a partial turnback");
    }
    std::vector<std::vector<TurnStep>> out;
    for (const LinkComponent& c : link_components(link)) {
        if (!c.closed) continue;
        if (c.biangle_circle) {
            out.push_back({TurnStep{c.circle_edge, TurnKind::Uturn, 0},
                           TurnStep{c.circle_edge, TurnKind::Uturn, 0}});
            continue;
        }
        std::vector<TurnStep> steps;
        for (const Passage& p : c.passages) {
            int d = ((p.pos_out - p.pos_in) % 3 + 3) % 3;
            if (d == 0) throw ComputeError("passage does not leave through another side");
            steps.push_back({p.edge_in, d == 1 ? TurnKind::Left : TurnKind::Right, 0});
        }
        // A closed component whose walk ended early made a partial turnback.
        if (steps.empty()) throw InputError("degenerate closed component");
        out.push_back(std::move(steps));
    }
    return out;
}

std::string classical_str(const std::map<ExpVec, Int>& poly) {
    if (poly.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [exps, c] : poly) {
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Int a = c < 0 ? Int(-c) : c;
        os << a;
        for (size_t e = 0; e < exps.size(); ++e)
            if (exps[e] != 0) os << "*Z" << e + 1 << "^" << exps[e];
    }
    return os.str();
}

}  // namespace qtrace
