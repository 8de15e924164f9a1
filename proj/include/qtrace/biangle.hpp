// Stated tangles in a biangle: slice words, Kauffman resolution into
// crossingless matchings, and the scalar trace.
#pragma once

#include "qtrace/omega.hpp"

#include <iosfwd>
#include <vector>

namespace qtrace {

enum class SliceKind { CrossOver, CrossUnder, Cup, Cap };

struct Slice {
    SliceKind kind;
    int pos;  // 1-based from the bottom

    bool operator==(const Slice&) const = default;
};

// A tangle in the strip, swept from wall 0 to wall 1. Strand positions are
// counted from the bottom; Cup adds two strands, Cap removes two, crossings
// swap neighbours. CrossOver(p): the strand entering at p passes over the one
// entering at p+1, and its A^-1 smoothing connects the inputs straight through.
class TangleWord {
  public:
    TangleWord() = default;
    TangleWord(int n0, std::vector<Slice> slices);

    int n0() const { return n0_; }
    int n1() const { return n1_; }
    const std::vector<Slice>& slices() const { return slices_; }
    int crossings() const;

    static TangleWord identity(int width) { return TangleWord(width, {}); }

    bool operator==(const TangleWord&) const = default;

  private:
    int n0_ = 0;
    int n1_ = 0;
    std::vector<Slice> slices_;
};

// Planar perfect matching of the wall points. Endpoints are numbered
// 0..n0-1 up wall 0 then n0..n0+n1-1 up wall 1; partner[i] is i's mate.
// Closed components removed during resolution are counted in `loops`.
struct CrossinglessMatching {
    int n0 = 0;
    std::vector<int> partner;
    int loops = 0;

    bool operator<(const CrossinglessMatching& o) const {
        return std::tie(n0, partner, loops) < std::tie(o.n0, o.partner, o.loops);
    }
    bool operator==(const CrossinglessMatching&) const = default;
};

// Resolves every crossing into its two smoothings, deleting closed loops into
// the `loops` counter, and combines equal matchings. Throws InputError past 16
// crossings.
std::vector<std::pair<CrossinglessMatching, OmegaPoly>> kauffman_resolve(const TangleWord& word);

// Weight of one stated matching: through strands demand equal signs; an arc
// returning to wall 1 weighs alpha for (top,bottom) = (+,-) and beta for (-,+);
// an arc returning to wall 0 weighs -A^-3 alpha / -A^-3 beta; every closed
// loop contributes -A^2 - A^-2.
OmegaPoly eval_matching(const CrossinglessMatching& m, const std::vector<int>& s0,
                        const std::vector<int>& s1);

OmegaPoly trace_b(const TangleWord& word, const std::vector<int>& s0, const std::vector<int>& s1);

// Strand connectivity of the unresolved word (crossings swap, cups/caps pair).
// Returns the endpoint matching plus the number of closed components.
CrossinglessMatching strand_connectivity(const TangleWord& word);

// Slice-list parser for the token grammar `id`, `x+ <p>`, `x- <p>`, `cup <p>`, `cap <p>`.
std::vector<Slice> parse_slices(const std::vector<std::string>& tokens);
std::string word_str(const TangleWord& word);

}  // namespace qtrace
