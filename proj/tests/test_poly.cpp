#include <catch2/catch_amalgamated.hpp>

#include "torman/linsolve.hpp"
#include "torman/poly.hpp"

#include <random>

using namespace torman;

namespace {

const std::vector<std::string> XY = {"x", "y"};

Poly random_laurent(std::mt19937_64& rng, const std::vector<std::string>& vars, int maxTerms = 4,
                    int expRange = 2, int coeffRange = 5, bool laurent = true) {
    std::uniform_int_distribution<int> nt(0, maxTerms);
    std::uniform_int_distribution<int> ex(laurent ? -expRange : 0, expRange);
    std::uniform_int_distribution<int> co(-coeffRange, coeffRange);
    Poly p(vars);
    int terms = nt(rng);
    for (int t = 0; t < terms; ++t) {
        Exp e(vars.size());
        for (auto& x : e) x = ex(rng);
        p.add_term(e, co(rng));
    }
    return p;
}

} // namespace

TEST_CASE("inverse monomials multiply to 1") {
    Poly a = Poly::monomial(XY, {1, -2});
    Poly b = Poly::monomial(XY, {-1, 2});
    REQUIRE(a * b == Poly::constant(XY, 1));
}

TEST_CASE("(1-y)(1+y) = 1-y^2") {
    std::vector<std::string> Y = {"y"};
    Poly one = Poly::constant(Y, 1);
    Poly y = Poly::variable(Y, 0);
    Poly expect(Y);
    expect.add_term({0}, 1);
    expect.add_term({2}, -1);
    REQUIRE((one - y) * (one + y) == expect);
}

TEST_CASE("multiplication by zero") {
    std::mt19937_64 rng(5);
    Poly p = random_laurent(rng, XY);
    REQUIRE((p * Poly(XY)).is_zero());
}

TEST_CASE("variable mismatch is rejected") {
    Poly a = Poly::constant({"x"}, 1);
    Poly b = Poly::constant({"y"}, 1);
    REQUIRE_THROWS_AS(a + b, VariableMismatch);
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 50; ++t) {
        Poly p = random_laurent(rng, XY), q = random_laurent(rng, XY), r = random_laurent(rng, XY);
        REQUIRE(p + q == q + p);
        REQUIRE(p * q == q * p);
        REQUIRE((p + q) + r == p + (q + r));
        REQUIRE((p * q) * r == p * (q * r));
        REQUIRE(p * (q + r) == p * q + p * r);
    }
}

TEST_CASE("substitute y -> 1 kills (1-y)^k") {
    std::vector<std::string> Y = {"y"};
    std::vector<std::string> none = {};
    Poly one_minus_y = Poly::constant(Y, 1) - Poly::variable(Y, 0);
    for (int k = 1; k <= 4; ++k) {
        Poly p = one_minus_y.pow(k);
        Poly image = substitute(p, {Poly::constant(none, 1)}, none);
        REQUIRE(image.is_zero());
    }
}

TEST_CASE("monomial substitution chi^2u -> chi^2u1 chi^2u2") {
    std::vector<std::string> C = {"c"};
    std::vector<std::string> C2 = {"c1", "c2"};
    Poly p = Poly::monomial(C, {2});
    Poly image = substitute_monomial(p, {Exp{1, 1}}, C2);
    REQUIRE(image == Poly::monomial(C2, {2, 2}));
}

TEST_CASE("substitution drops variables mapped to 1") {
    std::vector<std::string> Y2 = {"y1", "y2"};
    std::vector<std::string> C = {"c1"};
    Poly p = Poly::monomial(Y2, {1, 1}); // y1*y2
    Poly image = substitute(p, {Poly::variable(C, 0), Poly::constant(C, 1)}, C);
    REQUIRE(image == Poly::variable(C, 0));
}

TEST_CASE("negative power of non-unit image is rejected") {
    std::vector<std::string> Y = {"y"};
    Poly p = Poly::monomial(Y, {-1});
    Poly img = Poly::constant(Y, 1) + Poly::variable(Y, 0);
    REQUIRE_THROWS_AS(substitute(p, {img}, Y), NonInvertibleImage);
}

TEST_CASE("substitute is a ring homomorphism") {
    std::mt19937_64 rng(4242);
    std::vector<std::string> T = {"t1", "t2"};
    for (int trial = 0; trial < 30; ++trial) {
        Poly p = random_laurent(rng, XY, 3, 2, 3, false);
        Poly q = random_laurent(rng, XY, 3, 2, 3, false);
        std::vector<Poly> images = {random_laurent(rng, T, 2, 1, 2, false),
                                    random_laurent(rng, T, 2, 1, 2, false)};
        REQUIRE(substitute(p * q, images, T) == substitute(p, images, T) * substitute(q, images, T));
        REQUIRE(substitute(p + q, images, T) == substitute(p, images, T) + substitute(q, images, T));
    }
}

TEST_CASE("exact Laurent division") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 40; ++trial) {
        Poly q = random_laurent(rng, XY);
        Poly h = random_laurent(rng, XY);
        if (q.is_zero()) continue;
        auto got = try_exact_divide(q * h, q);
        REQUIRE(got.has_value());
        REQUIRE(*got == h);
    }
    // 1 / x is a Laurent quotient
    Poly one = Poly::constant(XY, 1);
    Poly x = Poly::variable(XY, 0);
    auto inv = try_exact_divide(one, x);
    REQUIRE(inv.has_value());
    REQUIRE(*inv == Poly::monomial(XY, {-1, 0}));
    // 1 / 2 is not
    REQUIRE(!try_exact_divide(one, Poly::constant(XY, 2)).has_value());
    // x+1 does not divide x
    REQUIRE(!try_exact_divide(x, x + one).has_value());
}

TEST_CASE("fraction-field solve: identity and monomial division") {
    std::vector<std::string> C = {"c"};
    Poly one = Poly::constant(C, 1);
    Poly c = Poly::variable(C, 0);

    auto r1 = solve_over_laurent_fraction_field({{one, Poly(C)}, {Poly(C), one}}, {c, c * c});
    REQUIRE(r1.ok());
    REQUIRE(r1.solution[0] == c);
    REQUIRE(r1.solution[1] == c * c);

    auto r2 = solve_over_laurent_fraction_field({{c}}, {c * c});
    REQUIRE(r2.ok());
    REQUIRE(r2.solution[0] == c);

    auto r3 = solve_over_laurent_fraction_field({{Poly::constant(C, 2)}}, {one});
    REQUIRE(r3.status == LaurentSolveResult::Status::not_in_ring);
    REQUIRE(r3.witnesses.size() == 1);

    auto r4 = solve_over_laurent_fraction_field({{Poly(C)}}, {one});
    REQUIRE(r4.status == LaurentSolveResult::Status::singular);
}

TEST_CASE("fraction-field solve recovers planted solutions") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<std::vector<Poly>> A(2, std::vector<Poly>(2, Poly(XY)));
        for (auto& row : A)
            for (auto& e : row) e = random_laurent(rng, XY, 2, 1, 3);
        std::vector<Poly> x0 = {random_laurent(rng, XY, 2, 1, 3), random_laurent(rng, XY, 2, 1, 3)};
        std::vector<Poly> b = {A[0][0] * x0[0] + A[0][1] * x0[1], A[1][0] * x0[0] + A[1][1] * x0[1]};
        Poly D = laurent_det(A);
        if (D.is_zero()) continue;
        auto r = solve_over_laurent_fraction_field(A, b);
        REQUIRE(r.ok());
        REQUIRE(r.solution[0] == x0[0]);
        REQUIRE(r.solution[1] == x0[1]);
    }
}
