// The omega = 1 oracle: holonomy matrix products over shear coordinates and
// the classical state sum, plus the bridge from simple diagrams to turn
// sequences.
#pragma once

#include "qtrace/state_sum.hpp"

#include <array>

namespace qtrace {

enum class TurnKind { Left, Right, Uturn };

struct TurnStep {
    int edge = 0;       // edge index crossed before this turn
    TurnKind kind = TurnKind::Left;
    int t = 0;          // full turns of the tangent (half-turn count offset for U-turns)

    bool operator==(const TurnStep&) const = default;
};

using Mat2 = std::array<std::array<long long, 2>, 2>;

// Left -> e(1 1; 0 1), Right -> e(1 0; 1 1), U-turn -> (0 e; -e 0), e = (-1)^t.
Mat2 turn_matrix(const TurnStep& step);

// trace of S(X_{i_1}) M_1 ... S(X_{i_k}) M_k with S(X) = diag(sqrt X, 1/sqrt X)
double holonomy_trace(const std::vector<TurnStep>& steps, const std::vector<double>& shear);

// sum over states s of prod_j m_j^{s_j s_{j+1}} prod_j Z_{i_j}^{s_j},
// a commutative Laurent polynomial in the Z_i over `edges` generators
std::map<ExpVec, Int> classical_state_sum(const std::vector<TurnStep>& steps, int edges);

// evaluation at Z_i = sqrt(X_i)
double eval_classical(const std::map<ExpVec, Int>& poly, const std::vector<double>& shear);

// Turn sequences of the closed components of a crossingless diagram with
// identity-like words: through passages become Left/Right turns by the slot
// step, circles inside one biangle become a U-turn pair. Throws InputError
// when a component makes a partial turnback (not an immersed-curve diagram).
std::vector<std::vector<TurnStep>> link_turn_sequences(const GoodPositionLink& link);

std::string classical_str(const std::map<ExpVec, Int>& poly);

}  // namespace qtrace
