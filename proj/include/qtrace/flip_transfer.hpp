// Diagonal-exchange transfer of quantum traces through the block-substitution
// tables, plus the geometric repositioning used to verify it independently.
#pragma once

#include "qtrace/state_sum.hpp"

namespace qtrace {

// One [bracket] (x) [bracket] summand of a block. Factors are (side role,
// exponent) pairs; side roles name the square's edges: 1 the diagonal, then
// 2,3,4,5 the sides in the order (top, right, bottom, left) with the first
// face carrying sides 5,2 before the exchange and 2,3 after it.
struct BlockTerm {
    std::vector<std::pair<int, int>> t1, t2;
};
using Block = std::vector<BlockTerm>;

// Contribution of one strand joining side `lo` to side `hi` (2 <= lo < hi <= 5)
// with endpoint signs (eps_lo, eps_hi), before / after the exchange.
// An empty block is a vanished state case.
Block flip_block_source(int lo, int hi, int eps_lo, int eps_hi);
Block flip_block_target(int lo, int hi, int eps_lo, int eps_hi);

// The same blocks computed from the elementary corner-arc traces by summing
// over the internal diagonal states.
Block derive_block(bool flipped, int lo, int hi, int eps_lo, int eps_hi);

// Re-expresses a link whose strands over the square of `e` are all straight
// horizontal arcs as a good-position link over the flipped triangulation.
GoodPositionLink reposition_link(const GoodPositionLink& link, int e);

// The trace over the flipped triangulation, computed by substituting each
// square strand's block. Independent of reposition + quantum_trace.
QTElement transfer_trace(const GoodPositionLink& link, int e, const BoundaryState& s,
                         const TraceOptions& opts = {});

}  // namespace qtrace
