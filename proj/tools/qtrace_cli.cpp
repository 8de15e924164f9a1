// qtrace: quantum traces of framed links over ideally triangulated surfaces.
#include "qtrace/flip_transfer.hpp"
#include "qtrace/io.hpp"
#include "qtrace/moves.hpp"

#include <CLI11.hpp>

#include <complex>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace qtrace;

std::complex<double> parse_complex(const std::string& spec) {
    // w=<a>+<b>i, w=<a>-<b>i or w=<a>
    if (spec.rfind("w=", 0) != 0) throw InputError("--eval expects w=<a>+<b>i");
    std::string s = spec.substr(2);
    if (s.empty()) throw InputError("--eval expects w=<a>+<b>i");
    size_t used = 0;
    double re = std::stod(s, &used);
    double im = 0.0;
    if (used < s.size()) {
        std::string rest = s.substr(used);
        if (rest.back() != 'i') throw InputError("--eval expects w=<a>+<b>i");
        rest.pop_back();
        if (rest == "+" || rest == "-") rest += "1";
        im = std::stod(rest);
    }
    return {re, im};
}

std::vector<int> parse_signs(const std::string& s) {
    std::vector<int> v;
    for (char c : s) {
        if (c == '+') v.push_back(+1);
        else if (c == '-') v.push_back(-1);
        else throw InputError(std::string("sign strings may only contain + and -, got '") + c + "'");
    }
    return v;
}

// all boundary states of a link, lexicographic with + before -
std::vector<BoundaryState> all_states_of(const GoodPositionLink& link) {
    const IdealTriangulation& tri = link.surface();
    std::vector<std::pair<int, int>> points;  // (edge, index)
    for (int e = 0; e < tri.edges(); ++e)
        if (tri.edge(e).boundary())
            for (int i = 0; i < link.words[e].n1(); ++i) points.emplace_back(e, i);
    std::vector<BoundaryState> out;
    for (long bits = 0; bits < (1L << points.size()); ++bits) {
        BoundaryState s;
        for (int e = 0; e < tri.edges(); ++e)
            if (tri.edge(e).boundary() && link.words[e].n1() > 0)
                s.signs[e].assign(link.words[e].n1(), 0);
        for (size_t i = 0; i < points.size(); ++i)
            s.signs[points[i].first][points[i].second] = (bits >> i) & 1 ? -1 : +1;
        out.push_back(std::move(s));
    }
    return out;
}

std::string eval_str(const QTElement& x, std::complex<double> w) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (const auto& [k, c] : x.terms()) {
        if (!first) os << " + ";
        first = false;
        std::complex<double> v = x.weyl_coefficient(k).eval(w);
        os << "(" << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i) * [";
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

struct CheckReport {
    int passed = 0, failed = 0;

    void record(bool ok, const std::string& what) {
        (ok ? passed : failed)++;
        std::cout << (ok ? "ok " : "FAIL ") << what << "\n";
    }
    int finish() const {
        std::cout << "passed " << passed << "/" << passed + failed << "\n";
        return failed == 0 ? 0 : 1;
    }
};

int check_moves(const GoodPositionLink& link, const BoundaryState& state, const TraceOptions& opt,
                CheckReport& rep) {
    QTElement base = quantum_trace(link, state, opt);
    auto moves = find_moves(link);
    for (const auto& [id, loc] : moves) {
        GoodPositionLink moved = apply_move(link, id, loc);
        QTElement after = quantum_trace(moved, state, opt);
        std::ostringstream what;
        what << "move " << move_name(id) << " at face " << loc.face + 1 << " rank " << loc.rank
             << " preserves the trace";
        rep.record(after == base, what.str());
    }
    if (moves.empty()) std::cout << "note: no applicable moves found\n";
    return 0;
}

int check_skein(const GoodPositionLink& link, const BoundaryState& state, const TraceOptions& opt,
                CheckReport& rep) {
    bool any = false;
    for (int e = 0; e < link.surface().edges(); ++e) {
        const TangleWord& w = link.words[e];
        for (size_t i = 0; i < w.slices().size(); ++i) {
            const Slice& s = w.slices()[i];
            if (s.kind != SliceKind::CrossOver && s.kind != SliceKind::CrossUnder) continue;
            any = true;
            auto replace = [&](std::vector<Slice> with) {
                std::vector<Slice> slices = w.slices();
                slices.erase(slices.begin() + static_cast<long>(i));
                slices.insert(slices.begin() + static_cast<long>(i), with.begin(), with.end());
                GoodPositionLink out = link;
                out.words[e] = TangleWord(w.n0(), std::move(slices));
                return out;
            };
            std::vector<Slice> turnback = {{SliceKind::Cap, s.pos}, {SliceKind::Cup, s.pos}};
            GoodPositionLink k_straight = replace({});
            GoodPositionLink k_turn = replace(turnback);
            const GoodPositionLink& k0 = s.kind == SliceKind::CrossOver ? k_straight : k_turn;
            const GoodPositionLink& ki = s.kind == SliceKind::CrossOver ? k_turn : k_straight;
            QTElement lhs = quantum_trace(link, state, opt);
            QTElement rhs = quantum_trace(k0, state, opt) * skein_A_inv() +
                            quantum_trace(ki, state, opt) * skein_A();
            std::ostringstream what;
            what << "skein relation at crossing " << i + 1 << " of edge '"
                 << link.surface().edge(e).name << "'";
            rep.record(lhs == rhs, what.str());
        }
    }
    if (!any) std::cout << "note: link has no crossings\n";
    return 0;
}

int check_classical(const GoodPositionLink& link, const TraceOptions& opt, unsigned seed,
                    CheckReport& rep) {
    const IdealTriangulation& tri = link.surface();
    auto seqs = link_turn_sequences(link);
    std::map<ExpVec, Int> classical;
    bool first = true;
    for (const auto& steps : seqs) {
        auto poly = classical_state_sum(steps, tri.edges());
        if (first) {
            classical = std::move(poly);
            first = false;
        } else {
            // product of the per-component polynomials
            std::map<ExpVec, Int> prod;
            for (const auto& [ka, ca] : classical)
                for (const auto& [kb, cb] : poly) {
                    ExpVec k = ka;
                    for (size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
                    prod[k] += ca * cb;
                }
            for (auto it = prod.begin(); it != prod.end();)
                it = it->second == 0 ? prod.erase(it) : std::next(it);
            classical = std::move(prod);
        }
    }
    if (first) classical[ExpVec(tri.edges(), 0)] = 1;

    QTElement q = quantum_trace(link, BoundaryState{}, opt);
    rep.record(specialize_commutative(q) == classical,
               "omega = 1 specialization equals the classical state sum");

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> shear(tri.edges());
        for (double& x : shear) x = dist(rng);
        double lhs = eval_classical(classical, shear);
        double rhs = 1.0;
        for (const auto& steps : seqs) rhs *= holonomy_trace(steps, shear);
        bool ok = std::abs(lhs - rhs) <= 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
        rep.record(ok, "state sum matches the holonomy trace at random shears, trial " +
                           std::to_string(trial + 1));
    }
    return 0;
}

int check_leading(const GoodPositionLink& link, const TraceOptions& opt, CheckReport& rep) {
    ExpVec want = leading_intersection_vector(link);
    QTElement q = quantum_trace(link, BoundaryState{}, opt);
    QTMonomial top = leading_term(q);
    rep.record(top.exps == want, "leading exponent vector equals the intersection vector");
    rep.record(top.coeff.is_unit(), "leading coefficient is a unit");
    return 0;
}

int check_balanced(const GoodPositionLink& link, const BoundaryState& state,
                   const TraceOptions& opt, CheckReport& rep) {
    const IdealTriangulation& tri = link.surface();
    QTElement tensor = quantum_trace_tensor(link, state, opt);
    bool matched = true, balanced_ok = true, parity_ok = true;
    for (const auto& [exps, c] : tensor.terms()) {
        ExpVec k(tri.edges(), 0);
        for (int e = 0; e < tri.edges(); ++e) {
            const EdgeRec& rec = tri.edge(e);
            k[e] = exps[rec.slot0];
            if (!rec.boundary() && exps[rec.slot1] != k[e]) matched = false;
        }
        if (!tri.balanced(k)) balanced_ok = false;
        for (int e = 0; e < tri.edges(); ++e) {
            int crossings = slot_width(link, tri.edge(e).slot0);
            if (((k[e] - crossings) % 2 + 2) % 2 != 0) parity_ok = false;
        }
    }
    rep.record(matched, "every monomial has matching exponents across interior edges");
    rep.record(balanced_ok, "every monomial is balanced");
    rep.record(parity_ok, "exponents are congruent to edge crossing counts mod 2");
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"quantum traces of framed links over ideal triangulations"};
    app.require_subcommand(1);

    std::string surface_path, link_path, state_path, curve_path, shear_path;
    std::string eval_spec, word_text, in_signs, out_signs, edge_name, suite;
    bool all_states = false, force = false, naive = false;
    unsigned seed = 12345;

    auto* trace = app.add_subcommand("trace", "quantum trace of a stated link");
    trace->add_option("-s,--surface", surface_path)->required();
    trace->add_option("-l,--link", link_path)->required();
    trace->add_option("-t,--states", state_path);
    trace->add_option("--eval", eval_spec);
    trace->add_flag("--all-states", all_states);
    trace->add_flag("--force", force);
    trace->add_flag("--naive", naive);

    auto* classical = app.add_subcommand("classical", "classical trace of an immersed curve");
    classical->add_option("-s,--surface", surface_path)->required();
    classical->add_option("-c,--curve", curve_path)->required();
    classical->add_option("-x,--shears", shear_path);

    auto* flip = app.add_subcommand("flip", "diagonal-exchange transfer of a trace");
    flip->add_option("-s,--surface", surface_path)->required();
    flip->add_option("-e,--edge", edge_name)->required();
    flip->add_option("-l,--link", link_path)->required();
    flip->add_option("-t,--states", state_path);
    flip->add_flag("--all-states", all_states);
    flip->add_flag("--force", force);

    auto* check = app.add_subcommand("check", "property suites on a link");
    check->add_option("-s,--surface", surface_path)->required();
    check->add_option("-l,--link", link_path)->required();
    check->add_option("--suite", suite)->required()
        ->check(CLI::IsMember({"moves", "skein", "classical", "leading", "balanced"}));
    check->add_option("-t,--states", state_path);
    check->add_option("--seed", seed);
    check->add_flag("--force", force);

    auto* bracket = app.add_subcommand("bracket", "biangle trace of a stated tangle word");
    bracket->add_option("-w,--word", word_text)->required();
    bracket->add_option("--in", in_signs);
    bracket->add_option("--out", out_signs);

    CLI11_PARSE(app, argc, argv);

    TraceOptions opt{force, naive};

    if (bracket->parsed()) {
        std::vector<int> s0 = parse_signs(in_signs), s1 = parse_signs(out_signs);
        std::istringstream ws(word_text);
        std::vector<std::string> tokens;
        std::string t;
        while (ws >> t) tokens.push_back(t);
        TangleWord word(static_cast<int>(s0.size()), parse_slices(tokens));
        if (word.n1() != static_cast<int>(s1.size()))
            throw InputError("word ends with " + std::to_string(word.n1()) +
                             " strands but --out has " + std::to_string(s1.size()) + " signs");
        std::cout << trace_b(word, s0, s1).str() << "\n";
        return 0;
    }

    if (classical->parsed()) {
        auto tri = load_surface(surface_path);
        auto steps = load_curve(curve_path, tri);
        auto poly = classical_state_sum(steps, tri.edges());
        std::cout << "statesum = " << classical_str(poly) << "\n";
        if (!shear_path.empty()) {
            auto shear = load_shear(shear_path, tri);
            double value = eval_classical(poly, shear);
            double hol = holonomy_trace(steps, shear);
            std::ostringstream os;
            os.precision(12);
            os << "value = " << value << "\nholonomy = " << hol << "\n";
            std::cout << os.str();
            bool ok = std::abs(value - hol) <= 1e-9 * std::max({1.0, std::abs(value), std::abs(hol)});
            std::cout << (ok ? "MATCH" : "MISMATCH") << "\n";
            return ok ? 0 : 1;
        }
        return 0;
    }

    auto tri = std::make_shared<IdealTriangulation>(load_surface(surface_path));
    GoodPositionLink link = load_link(link_path, tri);

    if (trace->parsed()) {
        std::vector<BoundaryState> states;
        if (all_states) states = all_states_of(link);
        else if (!state_path.empty()) states = {load_state(state_path, *tri)};
        else states = {BoundaryState{}};
        for (const BoundaryState& s : states) {
            QTElement q = quantum_trace(link, s, opt);
            if (all_states) std::cout << "trace[" << state_str(*tri, s) << "] = ";
            std::cout << qt_str(q) << "\n";
            if (!eval_spec.empty())
                std::cout << "eval: " << eval_str(q, parse_complex(eval_spec)) << "\n";
        }
        return 0;
    }

    if (flip->parsed()) {
        int e = tri->edge_index(edge_name);
        std::vector<BoundaryState> states;
        if (all_states) states = all_states_of(link);
        else if (!state_path.empty()) states = {load_state(state_path, *tri)};
        else states = {BoundaryState{}};
        bool ok = true;
        GoodPositionLink moved = reposition_link(link, e);
        for (const BoundaryState& s : states) {
            QTElement via_table = transfer_trace(link, e, s, opt);
            QTElement direct = quantum_trace(moved, s, opt);
            if (all_states) std::cout << "state[" << state_str(*tri, s) << "]\n";
            std::cout << "transfer = " << qt_str(via_table) << "\n";
            std::cout << "direct   = " << qt_str(direct) << "\n";
            ok = ok && via_table == direct;
        }
        std::cout << (ok ? "MATCH" : "MISMATCH") << "\n";
        return ok ? 0 : 1;
    }

    if (check->parsed()) {
        BoundaryState s;
        if (!state_path.empty()) s = load_state(state_path, *tri);
        CheckReport rep;
        if (suite == "moves") check_moves(link, s, opt, rep);
        else if (suite == "skein") check_skein(link, s, opt, rep);
        else if (suite == "classical") check_classical(link, opt, seed, rep);
        else if (suite == "leading") check_leading(link, opt, rep);
        else check_balanced(link, s, opt, rep);
        return rep.finish();
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qtrace::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qtrace::ComputeError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
