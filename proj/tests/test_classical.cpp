#include "fixtures.hpp"

#include "qtrace/classical.hpp"

#include <doctest.h>

#include <random>

using namespace qtrace;
namespace fx = qtrace::fixtures;

namespace {

std::map<ExpVec, Int> poly_of(std::initializer_list<std::pair<ExpVec, long>> terms) {
    std::map<ExpVec, Int> p;
    for (const auto& [k, c] : terms) p[k] = c;
    return p;
}

bool close(double a, double b, double tol = 1e-9) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::map<ExpVec, Int> product(const std::map<ExpVec, Int>& a, const std::map<ExpVec, Int>& b) {
    std::map<ExpVec, Int> out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            ExpVec k(ka.size());
            for (size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
            out[k] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace

TEST_CASE("turn matrices") {
    CHECK(turn_matrix({0, TurnKind::Left, 0}) == Mat2{{{1, 1}, {0, 1}}});
    CHECK(turn_matrix({0, TurnKind::Uturn, 0}) == Mat2{{{0, 1}, {-1, 0}}});
    CHECK(turn_matrix({0, TurnKind::Right, 1}) == Mat2{{{-1, 0}, {-1, -1}}});
    CHECK(turn_matrix({0, TurnKind::Left, 2}) == Mat2{{{1, 1}, {0, 1}}});
}

TEST_CASE("holonomy trace of the small circle") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    std::vector<TurnStep> circle = {{0, TurnKind::Uturn, 0}, {0, TurnKind::Uturn, 0}};
    for (int t = 0; t < 10; ++t) {
        std::vector<double> shear = {dist(rng), dist(rng), dist(rng)};
        CHECK(close(holonomy_trace(circle, shear), -2.0));
    }
}

TEST_CASE("punctured torus curve") {
    // crossing edge 1, turning right, crossing edge 2, turning left
    std::vector<TurnStep> steps = {{0, TurnKind::Right, 0}, {1, TurnKind::Left, 0}};
    CHECK(close(holonomy_trace(steps, {1.0, 1.0, 1.0}), 3.0));

    auto poly = classical_state_sum(steps, 3);
    CHECK(poly == poly_of({{{1, 1, 0}, 1}, {{-1, 1, 0}, 1}, {{-1, -1, 0}, 1}}));
    CHECK(classical_str(poly) == "1*Z1^-1*Z2^-1 + 1*Z1^-1*Z2^1 + 1*Z1^1*Z2^1");
}

TEST_CASE("state sum equals the holonomy trace") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    std::vector<std::vector<TurnStep>> fixtures = {
        {{0, TurnKind::Right, 0}, {1, TurnKind::Left, 0}},
        {{0, TurnKind::Left, 0}, {1, TurnKind::Left, 0}},
        {{0, TurnKind::Left, 0}, {1, TurnKind::Right, 1}, {2, TurnKind::Left, 0}},
        {{0, TurnKind::Uturn, 0}, {0, TurnKind::Uturn, 0}},
        {{0, TurnKind::Left, 0}, {1, TurnKind::Uturn, 1}, {0, TurnKind::Right, 0},
         {2, TurnKind::Uturn, 0}},
        {{0, TurnKind::Left, 2}, {0, TurnKind::Right, 3}},
    };
    for (const auto& steps : fixtures) {
        auto poly = classical_state_sum(steps, 3);
        for (int t = 0; t < 20; ++t) {
            std::vector<double> shear = {dist(rng), dist(rng), dist(rng)};
            CHECK(close(eval_classical(poly, shear), holonomy_trace(steps, shear)));
        }
    }
}

TEST_CASE("cyclic rotation leaves the trace unchanged") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    std::vector<TurnStep> steps = {{0, TurnKind::Left, 0},
                                   {1, TurnKind::Right, 0},
                                   {2, TurnKind::Left, 1},
                                   {1, TurnKind::Right, 0}};
    std::vector<TurnStep> rotated(steps.begin() + 1, steps.end());
    rotated.push_back(steps.front());
    for (int t = 0; t < 10; ++t) {
        std::vector<double> shear = {dist(rng), dist(rng), dist(rng)};
        CHECK(close(holonomy_trace(steps, shear), holonomy_trace(rotated, shear)));
    }
    CHECK(classical_state_sum(steps, 3) == classical_state_sum(rotated, 3));
}

TEST_CASE("converter on the torus curve") {
    auto tri = fx::punctured_torus();
    GoodPositionLink curve = fx::torus_curve_10(tri);
    auto seqs = link_turn_sequences(curve);
    REQUIRE(seqs.size() == 1);
    REQUIRE(seqs[0].size() == 2);

    auto poly = classical_state_sum(seqs[0], 3);
    CHECK(poly == poly_of({{{1, 1, 0}, 1}, {{-1, 1, 0}, 1}, {{-1, -1, 0}, 1}}));

    // the omega = 1 specialization of the quantum trace is the same polynomial
    CHECK(specialize_commutative(quantum_trace(curve, {})) == poly);
}

TEST_CASE("specialization matches the classical state sum on fixtures") {
    auto tri = fx::punctured_torus();
    std::mt19937 rng(23);
    int done = 0;
    while (done < 12) {
        GoodPositionLink link = fx::random_torus_multicurve(tri, rng, 2);
        auto seqs = link_turn_sequences(link);
        std::map<ExpVec, Int> classical = poly_of({{ExpVec(3, 0), 1}});
        for (const auto& steps : seqs) classical = product(classical, classical_state_sum(steps, 3));
        CHECK(specialize_commutative(quantum_trace(link, {}, {true, false})) == classical);
        ++done;
    }
}

TEST_CASE("converter and numeric oracle work together") {
    auto tri = fx::punctured_torus();
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    GoodPositionLink link = fx::random_torus_multicurve(tri, rng, 3);
    auto seqs = link_turn_sequences(link);
    std::map<ExpVec, Int> classical = poly_of({{ExpVec(3, 0), 1}});
    for (const auto& steps : seqs) classical = product(classical, classical_state_sum(steps, 3));
    for (int t = 0; t < 20; ++t) {
        std::vector<double> shear = {dist(rng), dist(rng), dist(rng)};
        double prod = 1.0;
        for (const auto& steps : seqs) prod *= holonomy_trace(steps, shear);
        CHECK(close(eval_classical(classical, shear), prod));
    }
}

TEST_CASE("circle in a biangle converts to a U-turn pair") {
    auto tri = fx::punctured_torus();
    GoodPositionLink circle =
        make_link(tri, {{}, {}}, {{1, {{SliceKind::Cup, 1}, {SliceKind::Cap, 1}}}});
    auto seqs = link_turn_sequences(circle);
    REQUIRE(seqs.size() == 1);
    REQUIRE(seqs[0].size() == 2);
    CHECK(seqs[0][0].kind == TurnKind::Uturn);
    CHECK(seqs[0][1].kind == TurnKind::Uturn);
    CHECK(seqs[0][0].edge == 1);
    CHECK(close(holonomy_trace(seqs[0], {0.5, 2.5, 7.0}), -2.0));
    CHECK(specialize_commutative(quantum_trace(circle, {})) ==
          poly_of({{ExpVec{0, 0, 0}, -2}}));
}

TEST_CASE("converter rejects non-immersed diagrams") {
    auto tri = fx::punctured_torus();
    GoodPositionLink curve = fx::torus_curve_10(tri);
    GoodPositionLink crossed = superpose(curve, curve);
    crossed.words[0] = TangleWord(2, {{SliceKind::CrossOver, 1}});
    CHECK_THROWS_AS(link_turn_sequences(crossed), InputError);

    GoodPositionLink bent = superpose(curve, curve);
    bent.words[1] = TangleWord(2, {{SliceKind::Cap, 1}, {SliceKind::Cup, 1}});
    CHECK_THROWS_AS(link_turn_sequences(bent), InputError);

    // a snake is immersed and converts like the straight strand
    GoodPositionLink snake = curve;
    snake.words[1] = TangleWord(1, {{SliceKind::Cup, 1}, {SliceKind::Cap, 2}});
    CHECK(link_turn_sequences(snake) == link_turn_sequences(curve));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(holonomy_trace({}, {1.0}), InputError);
    CHECK_THROWS_AS(holonomy_trace({{0, TurnKind::Left, 0}}, {-1.0}), InputError);
    CHECK_THROWS_AS(classical_state_sum({}, 3), InputError);
    CHECK_THROWS_AS(classical_state_sum({{5, TurnKind::Left, 0}}, 3), InputError);
}
