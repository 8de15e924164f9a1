#include "qtrace/io.hpp"

#include <fstream>
#include <sstream>

namespace qtrace {

namespace {

struct LineReader {
    std::istream& in;
    std::string filename;
    int lineno = 0;

    // next non-empty, non-comment line split into tokens
    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            tokens.clear();
            std::string t;
            while (ls >> t) tokens.push_back(t);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError(filename + ":" + std::to_string(lineno) + ": " + msg);
    }

    int to_int(const std::string& s) const {
        try {
            size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            fail("expected an integer, got '" + s + "'");
        }
    }

    double to_double(const std::string& s) const {
        try {
            size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            fail("expected a number, got '" + s + "'");
        }
    }
};

std::ifstream open_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    return f;
}

// `<j>.<a>` -> flat slot id, 1-based input
int parse_slot(LineReader& r, const std::string& s, int faces) {
    auto dot = s.find('.');
    if (dot == std::string::npos) r.fail("expected <face>.<slot>, got '" + s + "'");
    int j = r.to_int(s.substr(0, dot));
    int a = r.to_int(s.substr(dot + 1));
    if (j < 1 || j > faces) r.fail("face " + std::to_string(j) + " out of range");
    if (a < 1 || a > 3) r.fail("slot position " + std::to_string(a) + " must be 1..3");
    return IdealTriangulation::slot_id(j - 1, a - 1);
}

}  // namespace

IdealTriangulation parse_surface(std::istream& in, const std::string& filename) {
    LineReader r{in, filename};
    std::vector<std::string> tok;
    if (!r.next(tok) || tok[0] != "triangles" || tok.size() != 2)
        r.fail("surface file must start with 'triangles <m>'");
    int m = r.to_int(tok[1]);
    std::vector<EdgeRec> edges;
    while (r.next(tok)) {
        if (tok[0] != "edge" || tok.size() != 4)
            r.fail("expected 'edge <name> <j>.<a> <j'>.<a'>|@boundary'");
        EdgeRec rec;
        rec.name = tok[1];
        rec.slot0 = parse_slot(r, tok[2], m);
        rec.slot1 = tok[3] == "@boundary" ? -1 : parse_slot(r, tok[3], m);
        edges.push_back(std::move(rec));
    }
    try {
        return IdealTriangulation::build(m, std::move(edges));
    } catch (const InputError& e) {
        throw InputError(filename + ": " + e.what());
    }
}

IdealTriangulation load_surface(const std::string& path) {
    auto f = open_file(path);
    return parse_surface(f, path);
}

GoodPositionLink parse_link(std::istream& in, const std::string& filename,
                            std::shared_ptr<const IdealTriangulation> tri) {
    LineReader r{in, filename};
    std::vector<std::string> tok;
    std::vector<std::vector<TriangleArc>> arcs(tri->faces());
    std::map<int, std::vector<Slice>> words;
    while (r.next(tok)) {
        if (tok[0] == "arc") {
            if (tok.size() != 5) r.fail("expected 'arc <face> <slot_in> <slot_out> <elev>'");
            int f = r.to_int(tok[1]);
            if (f < 1 || f > tri->faces()) r.fail("face out of range");
            int si = r.to_int(tok[2]), so = r.to_int(tok[3]);
            if (si < 1 || si > 3 || so < 1 || so > 3) r.fail("slot positions must be 1..3");
            arcs[f - 1].push_back({si - 1, so - 1, r.to_int(tok[4])});
        } else if (tok[0] == "tangle") {
            if (tok.size() < 2) r.fail("expected 'tangle <edge> <word>'");
            int e;
            try {
                e = tri->edge_index(tok[1]);
            } catch (const InputError& ex) {
                r.fail(ex.what());
            }
            if (words.count(e)) r.fail("duplicate tangle for edge '" + tok[1] + "'");
            try {
                words[e] = parse_slices({tok.begin() + 2, tok.end()});
            } catch (const InputError& ex) {
                r.fail(ex.what());
            }
        } else {
            r.fail("unknown directive '" + tok[0] + "'");
        }
    }
    try {
        return make_link(std::move(tri), std::move(arcs), std::move(words));
    } catch (const InputError& e) {
        throw InputError(filename + ": " + e.what());
    }
}

GoodPositionLink load_link(const std::string& path, std::shared_ptr<const IdealTriangulation> tri) {
    auto f = open_file(path);
    return parse_link(f, path, std::move(tri));
}

BoundaryState parse_state(std::istream& in, const std::string& filename,
                          const IdealTriangulation& tri) {
    LineReader r{in, filename};
    std::vector<std::string> tok;
    BoundaryState s;
    while (r.next(tok)) {
        if (tok[0] != "state" || tok.size() != 4)
            r.fail("expected 'state <edge> <index-from-bottom> <+|->'");
        int e;
        try {
            e = tri.edge_index(tok[1]);
        } catch (const InputError& ex) {
            r.fail(ex.what());
        }
        if (!tri.edge(e).boundary()) r.fail("edge '" + tok[1] + "' is not a boundary edge");
        int idx = r.to_int(tok[2]);
        if (idx < 1) r.fail("state index must be positive");
        if (tok[3] != "+" && tok[3] != "-") r.fail("state sign must be + or -");
        auto& v = s.signs[e];
        if (static_cast<int>(v.size()) < idx) v.resize(idx, 0);
        if (v[idx - 1] != 0) r.fail("state assigned twice at the same point");
        v[idx - 1] = tok[3] == "+" ? +1 : -1;
    }
    for (const auto& [e, v] : s.signs)
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] == 0)
                throw InputError(filename + ": missing sign for point " + std::to_string(i + 1) +
                                 " of edge '" + tri.edge(e).name + "'");
    return s;
}

BoundaryState load_state(const std::string& path, const IdealTriangulation& tri) {
    auto f = open_file(path);
    return parse_state(f, path, tri);
}

std::vector<TurnStep> parse_curve(std::istream& in, const std::string& filename,
                                  const IdealTriangulation& tri) {
    LineReader r{in, filename};
    std::vector<std::string> tok;
    std::vector<TurnStep> steps;
    while (r.next(tok)) {
        if (tok[0] != "step" || tok.size() != 4) r.fail("expected 'step <edge> <L|R|U> <t>'");
        TurnStep st;
        try {
            st.edge = tri.edge_index(tok[1]);
        } catch (const InputError& ex) {
            r.fail(ex.what());
        }
        if (tok[2] == "L") st.kind = TurnKind::Left;
        else if (tok[2] == "R") st.kind = TurnKind::Right;
        else if (tok[2] == "U") st.kind = TurnKind::Uturn;
        else r.fail("turn kind must be L, R or U");
        st.t = r.to_int(tok[3]);
        steps.push_back(st);
    }
    return steps;
}

std::vector<TurnStep> load_curve(const std::string& path, const IdealTriangulation& tri) {
    auto f = open_file(path);
    return parse_curve(f, path, tri);
}

std::vector<double> parse_shear(std::istream& in, const std::string& filename,
                                const IdealTriangulation& tri) {
    LineReader r{in, filename};
    std::vector<std::string> tok;
    std::vector<double> x(tri.edges(), 0.0);
    while (r.next(tok)) {
        if (tok[0] != "shear" || tok.size() != 3) r.fail("expected 'shear <edge> <value>'");
        int e;
        try {
            e = tri.edge_index(tok[1]);
        } catch (const InputError& ex) {
            r.fail(ex.what());
        }
        double v = r.to_double(tok[2]);
        if (!(v > 0.0)) r.fail("shear values must be positive");
        x[e] = v;
    }
    return x;
}

std::vector<double> load_shear(const std::string& path, const IdealTriangulation& tri) {
    auto f = open_file(path);
    return parse_shear(f, path, tri);
}

std::string qt_str(const QTElement& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : x.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << x.weyl_coefficient(k).str() << ") * [";
        bool any = false;
        for (size_t i = 0; i < k.size(); ++i) {
            if (k[i] == 0) continue;
            if (any) os << " ";
            any = true;
            os << "Z" << i + 1 << "^" << k[i];
        }
        if (!any) os << "1";
        os << "]";
    }
    return os.str();
}

QTElement qt_parse(const std::string& text, std::shared_ptr<const CommutationMatrix> comm) {
    QTElement out(comm);
    if (text == "0") return out;
    size_t i = 0;
    auto expect = [&](const std::string& s) {
        if (text.compare(i, s.size(), s) != 0)
            throw InputError("malformed trace polynomial near '" + text.substr(i, 12) + "'");
        i += s.size();
    };
    const int n = comm->size();
    while (i < text.size()) {
        expect("(");
        size_t close = text.find(')', i);
        if (close == std::string::npos) throw InputError("malformed trace polynomial: missing ')'");
        OmegaPoly weyl_c = OmegaPoly::parse(text.substr(i, close - i));
        i = close + 1;
        expect(" * [");
        size_t end = text.find(']', i);
        if (end == std::string::npos) throw InputError("malformed trace polynomial: missing ']'");
        std::istringstream ms(text.substr(i, end - i));
        i = end + 1;
        ExpVec k(n, 0);
        std::string factor;
        while (ms >> factor) {
            if (factor == "1") continue;
            auto caret = factor.find('^');
            if (factor[0] != 'Z' || caret == std::string::npos)
                throw InputError("malformed monomial factor '" + factor + "'");
            int gen = std::stoi(factor.substr(1, caret - 1));
            int exp = std::stoi(factor.substr(caret + 1));
            if (gen < 1 || gen > n) throw InputError("generator index out of range");
            k[gen - 1] = exp;
        }
        // stored coefficient is normal-ordered: [Z^k] = w^{-s} Z^k
        out.add_term(k, weyl_c * weyl_monomial(k, *comm).coeff);
        if (i < text.size()) expect(" + ");
    }
    return out;
}

std::string state_str(const IdealTriangulation& tri, const BoundaryState& s) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : s.signs) {
        if (v.empty()) continue;
        if (!first) os << ",";
        first = false;
        os << tri.edge(e).name << "=";
        for (int sign : v) os << (sign > 0 ? '+' : '-');
    }
    return os.str();
}

}  // namespace qtrace
