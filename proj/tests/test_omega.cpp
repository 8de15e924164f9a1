#include "qtrace/omega.hpp"

#include <doctest.h>

#include <random>

using namespace qtrace;

namespace {

OmegaPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(0, 4), expo(-6, 6), coeff(-9, 9);
    OmegaPoly p;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) p += OmegaPoly::term(expo(rng), coeff(rng));
    return p;
}

}  // namespace

TEST_CASE("addition") {
    // (w + 1) + (-1 - w) = 0
    OmegaPoly a = omega(1) + OmegaPoly(1);
    OmegaPoly b = OmegaPoly(-1) - omega(1);
    CHECK((a + b).is_zero());

    // alpha^2 + beta^2 = A^5 + A
    OmegaPoly lhs = skein_alpha() * skein_alpha() + skein_beta() * skein_beta();
    OmegaPoly rhs = skein_A().pow(5) + skein_A();
    CHECK(lhs == rhs);
    CHECK(lhs == omega(-10) + omega(-2));

    CHECK(OmegaPoly::term(3, 2) + OmegaPoly::term(3, 3) == OmegaPoly::term(3, 5));
}

TEST_CASE("multiplication") {
    // alpha * beta = -A^3
    CHECK(skein_alpha() * skein_beta() == OmegaPoly::term(-6, -1));
    CHECK(skein_alpha() * skein_beta() == -skein_A().pow(3));

    OmegaPoly p = omega(-5) + OmegaPoly::term(2, 3);
    CHECK(OmegaPoly(1) * p == p);
    CHECK(skein_A() * skein_A() * skein_A() == OmegaPoly::term(-6));
}

TEST_CASE("specialization at unity") {
    CHECK((omega(-5) - omega(1)).at_unity() == 0);
    CHECK(loop_factor().at_unity() == -2);
    CHECK(OmegaPoly().at_unity() == 0);
}

TEST_CASE("numeric evaluation") {
    std::complex<double> i(0.0, 1.0);
    CHECK(omega(1).eval(i) == i);
    CHECK(loop_factor().eval({1.0, 0.0}).real() == doctest::Approx(-2.0));
    // alpha*beta + w^-6 = 0
    OmegaPoly z = skein_alpha() * skein_beta() + omega(-6);
    CHECK(z.is_zero());
    CHECK(std::abs(z.eval({0.7, 0.3})) == doctest::Approx(0.0));
    CHECK_THROWS_AS(omega(1).eval({0.0, 0.0}), InputError);
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        OmegaPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK((a * b).at_unity() == a.at_unity() * b.at_unity());
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(11);
    std::complex<double> w(0.83, -0.41);
    for (int trial = 0; trial < 50; ++trial) {
        OmegaPoly a = random_poly(rng), b = random_poly(rng);
        std::complex<double> lhs = (a * b).eval(w);
        std::complex<double> rhs = a.eval(w) * b.eval(w);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("text round trip") {
    OmegaPoly p = OmegaPoly::term(-5, -1) + OmegaPoly::term(3, 2);
    CHECK(p.str() == "-1*w^-5 + 2*w^3");
    CHECK(OmegaPoly::parse(p.str()) == p);
    CHECK(OmegaPoly().str() == "0");
    CHECK(OmegaPoly::parse("0").is_zero());
    CHECK(loop_factor().str() == "-1*w^-4 - 1*w^4");
    CHECK(OmegaPoly::parse(loop_factor().str()) == loop_factor());

    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        OmegaPoly p2 = random_poly(rng);
        CHECK(OmegaPoly::parse(p2.str()) == p2);
    }
    CHECK_THROWS_AS(OmegaPoly::parse("w^2 +"), InputError);
}

TEST_CASE("units") {
    CHECK(omega(4).is_unit());
    CHECK(kink_factor_pos().is_unit());
    CHECK(kink_factor_pos() * kink_factor_neg() == OmegaPoly(1));
    CHECK(!loop_factor().is_unit());
    CHECK(omega(3).unit_inverse() == omega(-3));
    CHECK_THROWS_AS(loop_factor().unit_inverse(), ComputeError);
}
