#include "qtrace/biangle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qtrace {

TangleWord::TangleWord(int n0, std::vector<Slice> slices) : n0_(n0), slices_(std::move(slices)) {
    if (n0 < 0) throw InputError("negative strand count");
    int w = n0;
    for (const Slice& s : slices_) {
        switch (s.kind) {
            case SliceKind::CrossOver:
            case SliceKind::CrossUnder:
                if (s.pos < 1 || s.pos + 1 > w)
                    throw InputError("crossing position " + std::to_string(s.pos) +
                                     " invalid for " + std::to_string(w) + " strands");
                break;
            case SliceKind::Cup:
                if (s.pos < 1 || s.pos > w + 1)
                    throw InputError("cup position " + std::to_string(s.pos) + " invalid for " +
                                     std::to_string(w) + " strands");
                w += 2;
                break;
            case SliceKind::Cap:
                if (s.pos < 1 || s.pos + 1 > w)
                    throw InputError("cap position " + std::to_string(s.pos) + " invalid for " +
                                     std::to_string(w) + " strands");
                w -= 2;
                break;
        }
    }
    n1_ = w;
}

int TangleWord::crossings() const {
    int c = 0;
    for (const Slice& s : slices_)
        if (s.kind == SliceKind::CrossOver || s.kind == SliceKind::CrossUnder) ++c;
    return c;
}

namespace {

// A live strand end during the sweep. Its far side is either a finished wall-0
// endpoint or another live strand (the two ends of one open arc).
struct StrandRec {
    int far_endpoint = -1;
    int far_strand = -1;
};

struct SweepState {
    std::vector<StrandRec> reg;
    std::vector<int> cur;  // live strand ids, bottom to top
    std::vector<std::pair<int, int>> pairs;
    int loops = 0;

    int fresh(int far_ep, int far_st) {
        reg.push_back({far_ep, far_st});
        return static_cast<int>(reg.size()) - 1;
    }

    // Fuse the near ends of strands u and v.
    void join(int u, int v) {
        const StrandRec& ru = reg[u];
        const StrandRec& rv = reg[v];
        if (ru.far_strand == v) {
            ++loops;
            return;
        }
        if (ru.far_endpoint >= 0 && rv.far_endpoint >= 0) {
            pairs.emplace_back(ru.far_endpoint, rv.far_endpoint);
        } else if (ru.far_endpoint >= 0) {
            reg[rv.far_strand] = {ru.far_endpoint, -1};
        } else if (rv.far_endpoint >= 0) {
            reg[ru.far_strand] = {rv.far_endpoint, -1};
        } else {
            int fu = ru.far_strand, fv = rv.far_strand;
            reg[fu] = {-1, fv};
            reg[fv] = {-1, fu};
        }
    }

    void cup(int p) {
        int a = fresh(-1, -1), b = fresh(-1, -1);
        reg[a].far_strand = b;
        reg[b].far_strand = a;
        cur.insert(cur.begin() + (p - 1), {a, b});
    }

    void cap(int p) {
        join(cur[p - 1], cur[p]);
        cur.erase(cur.begin() + (p - 1), cur.begin() + (p + 1));
    }

    // Turnback smoothing of a crossing at p: the two inputs close up and a
    // fresh cup takes their place.
    void turnback(int p) {
        join(cur[p - 1], cur[p]);
        int a = fresh(-1, -1), b = fresh(-1, -1);
        reg[a].far_strand = b;
        reg[b].far_strand = a;
        cur[p - 1] = a;
        cur[p] = b;
    }

    CrossinglessMatching finish(int n0) const {
        CrossinglessMatching m;
        m.n0 = n0;
        m.loops = loops;
        m.partner.assign(n0 + cur.size(), -1);
        std::vector<int> wall1_of(reg.size(), -1);
        for (size_t i = 0; i < cur.size(); ++i) wall1_of[cur[i]] = n0 + static_cast<int>(i);
        for (const auto& [a, b] : pairs) {
            m.partner[a] = b;
            m.partner[b] = a;
        }
        for (size_t i = 0; i < cur.size(); ++i) {
            int ep = n0 + static_cast<int>(i);
            const StrandRec& r = reg[cur[i]];
            int other = r.far_endpoint >= 0 ? r.far_endpoint : wall1_of[r.far_strand];
            m.partner[ep] = other;
            m.partner[other] = ep;
        }
        return m;
    }
};

void resolve_rec(const TangleWord& word, size_t slice_idx, SweepState state, OmegaPoly weight,
                 std::map<CrossinglessMatching, OmegaPoly>& out) {
    for (size_t i = slice_idx; i < word.slices().size(); ++i) {
        const Slice& s = word.slices()[i];
        switch (s.kind) {
            case SliceKind::Cup:
                state.cup(s.pos);
                break;
            case SliceKind::Cap:
                state.cap(s.pos);
                break;
            case SliceKind::CrossOver:
            case SliceKind::CrossUnder: {
                bool over = s.kind == SliceKind::CrossOver;
                // CrossOver: A^-1 straight-through + A turnback; mirrored for CrossUnder.
                SweepState branch = state;
                branch.turnback(s.pos);
                resolve_rec(word, i + 1, std::move(branch),
                            weight * (over ? skein_A() : skein_A_inv()), out);
                weight *= over ? skein_A_inv() : skein_A();
                continue;
            }
        }
    }
    CrossinglessMatching m = state.finish(word.n0());
    auto it = out.find(m);
    if (it == out.end()) {
        out.emplace(std::move(m), std::move(weight));
    } else {
        it->second += weight;
        if (it->second.is_zero()) out.erase(it);
    }
}

}  // namespace

std::vector<std::pair<CrossinglessMatching, OmegaPoly>> kauffman_resolve(const TangleWord& word) {
    if (word.crossings() > 16)
        throw InputError("tangle word has " + std::to_string(word.crossings()) +
                         " crossings; the resolution cap is 16");
    SweepState init;
    init.cur.resize(word.n0());
    for (int i = 0; i < word.n0(); ++i) {
        init.cur[i] = init.fresh(i, -1);
    }
    std::map<CrossinglessMatching, OmegaPoly> out;
    resolve_rec(word, 0, std::move(init), OmegaPoly(1), out);
    return {out.begin(), out.end()};
}

OmegaPoly eval_matching(const CrossinglessMatching& m, const std::vector<int>& s0,
                        const std::vector<int>& s1) {
    const int n0 = m.n0;
    const int total = static_cast<int>(m.partner.size());
    if (static_cast<int>(s0.size()) != n0 || static_cast<int>(s1.size()) != total - n0)
        throw InputError("state length does not match the matching's wall widths");
    auto sign_at = [&](int ep) { return ep < n0 ? s0[ep] : s1[ep - n0]; };

    OmegaPoly w = loop_factor().pow(static_cast<unsigned>(m.loops));
    for (int ep = 0; ep < total; ++ep) {
        int q = m.partner[ep];
        if (q < ep) continue;
        int lo = sign_at(ep), hi = sign_at(q);  // ep < q: ep is the lower point
        if ((ep < n0) != (q < n0)) {
            if (lo != hi) return OmegaPoly();
            continue;
        }
        if (lo == hi) return OmegaPoly();
        // (top, bottom) = (hi, lo)
        OmegaPoly arc = (hi == +1) ? skein_alpha() : skein_beta();
        if (ep < n0) arc *= kink_factor_pos();  // wall-0 return carries the extra -A^-3
        w *= arc;
    }
    return w;
}

OmegaPoly trace_b(const TangleWord& word, const std::vector<int>& s0, const std::vector<int>& s1) {
    OmegaPoly total;
    for (const auto& [m, weight] : kauffman_resolve(word)) total += weight * eval_matching(m, s0, s1);
    return total;
}

CrossinglessMatching strand_connectivity(const TangleWord& word) {
    SweepState st;
    st.cur.resize(word.n0());
    for (int i = 0; i < word.n0(); ++i) st.cur[i] = st.fresh(i, -1);
    for (const Slice& s : word.slices()) {
        switch (s.kind) {
            case SliceKind::Cup:
                st.cup(s.pos);
                break;
            case SliceKind::Cap:
                st.cap(s.pos);
                break;
            case SliceKind::CrossOver:
            case SliceKind::CrossUnder:
                std::swap(st.cur[s.pos - 1], st.cur[s.pos]);
                break;
        }
    }
    return st.finish(word.n0());
}

std::vector<Slice> parse_slices(const std::vector<std::string>& tokens) {
    std::vector<Slice> out;
    size_t i = 0;
    auto need_pos = [&](const std::string& op) {
        if (i >= tokens.size())
            throw InputError("tangle word: '" + op + "' needs a position argument");
        try {
            size_t used = 0;
            int p = std::stoi(tokens[i], &used);
            if (used != tokens[i].size() || p < 1) throw std::invalid_argument("");
            ++i;
            return p;
        } catch (const std::exception&) {
            throw InputError("tangle word: bad position '" + tokens[i] + "'");
        }
    };
    while (i < tokens.size()) {
        const std::string& t = tokens[i++];
        if (t == "id") continue;
        if (t == "x+") out.push_back({SliceKind::CrossOver, need_pos(t)});
        else if (t == "x-") out.push_back({SliceKind::CrossUnder, need_pos(t)});
        else if (t == "cup") out.push_back({SliceKind::Cup, need_pos(t)});
        else if (t == "cap") out.push_back({SliceKind::Cap, need_pos(t)});
        else throw InputError("tangle word: unknown token '" + t + "'");
    }
    return out;
}

std::string word_str(const TangleWord& word) {
    if (word.slices().empty()) return "id";
    std::ostringstream os;
    bool first = true;
    for (const Slice& s : word.slices()) {
        if (!first) os << " ";
        first = false;
        switch (s.kind) {
            case SliceKind::CrossOver: os << "x+ "; break;
            case SliceKind::CrossUnder: os << "x- "; break;
            case SliceKind::Cup: os << "cup "; break;
            case SliceKind::Cap: os << "cap "; break;
        }
        os << s.pos;
    }
    return os.str();
}

}  // namespace qtrace
