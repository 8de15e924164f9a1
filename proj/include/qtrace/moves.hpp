// Local good-position rewrites: the elementary repositioning moves and their
// inverses, addressed by face, elevation rank and slot.
#pragma once

#include "qtrace/state_sum.hpp"

namespace qtrace {

enum class MoveId { I, Iinv, II, IIinv, III, IIIinv, IV, IVinv, V, Vinv };

struct MoveLoc {
    int face = -1;
    int rank = -1;    // lower rank of the pair, the arc's rank, or the insertion rank
    int slot_a = -1;  // I/Iinv: side of the surviving turnback / the consumed one
    int slot_b = -1;  // I/Iinv/IIinv: side holding the turnback being created or removed
};

std::string move_name(MoveId id);

// Rewrites the link; throws InputError with a diagnostic when the local
// pattern does not match the move's source side.
GoodPositionLink apply_move(const GoodPositionLink& link, MoveId id, const MoveLoc& loc);

// Every applicable (move, location) pair on the link.
std::vector<std::pair<MoveId, MoveLoc>> find_moves(const GoodPositionLink& link);

}  // namespace qtrace
