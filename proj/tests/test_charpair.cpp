#include <catch2/catch_amalgamated.hpp>

#include "torman/charpair.hpp"

using namespace torman;

namespace {

CharacteristicPair cp1() {
    CharacteristicPair p;
    p.n = 1;
    p.d = 2;
    p.nerve_max = {{0}, {1}};
    p.lambda = IntMatrix::from_rows({{Int(1)}, {Int(-1)}});
    return p;
}

CharacteristicPair cp2() {
    CharacteristicPair p;
    p.n = 2;
    p.d = 3;
    p.nerve_max = {{0, 1}, {0, 2}, {1, 2}};
    p.lambda = IntMatrix::from_rows({{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-1)}});
    return p;
}

CharacteristicPair square() { // CP1 x CP1
    CharacteristicPair p;
    p.n = 2;
    p.d = 4;
    p.nerve_max = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    p.lambda = IntMatrix::from_rows(
        {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(0)}, {Int(0), Int(-1)}});
    return p;
}

} // namespace

TEST_CASE("CP2 pair is valid with 3 vertices") {
    ValidationReport rep = validate(cp2());
    REQUIRE(rep.valid);
    REQUIRE(rep.vertex_count == 3);
}

TEST_CASE("non-unimodular vertex is reported with its determinant") {
    CharacteristicPair p;
    p.n = 2;
    p.d = 2;
    p.nerve_max = {{0, 1}};
    p.lambda = IntMatrix::from_rows({{Int(2), Int(0)}, {Int(0), Int(1)}});
    ValidationReport rep = validate(p);
    REQUIRE(!rep.valid);
    // the determinant failure is at vertex {1,2}; primitivity of row 1 also fails
    bool found = false;
    for (const auto& [v, dt] : rep.bad_vertices)
        if (v.facets == std::vector<int>{0, 1} && dt == 2) found = true;
    REQUIRE(found);
}

TEST_CASE("empty pair is invalid") {
    CharacteristicPair p;
    p.n = 1;
    p.d = 0;
    ValidationReport rep = validate(p);
    REQUIRE(!rep.valid);
}

TEST_CASE("vertices of CP1, CP2, square") {
    auto v1 = vertices(cp1());
    REQUIRE(v1.size() == 2);
    REQUIRE(v1[0].facets == std::vector<int>{0});
    REQUIRE(v1[1].facets == std::vector<int>{1});

    auto v2 = vertices(cp2());
    REQUIRE(v2.size() == 3);

    auto v4 = vertices(square());
    REQUIRE(v4.size() == 4);
}

TEST_CASE("join follows the face order") {
    // CP2: {1,2} v {1,3} = {1}
    FaceId a{{0, 1}}, b{{0, 2}};
    REQUIRE(join(a, b).facets == std::vector<int>{0});
    // CP1: {1} v {2} = Q
    REQUIRE(join(FaceId{{0}}, FaceId{{1}}).is_Q());
    // idempotent
    REQUIRE(join(a, a) == a);
}

TEST_CASE("join properties across all vertex pairs") {
    for (const auto& pair : {cp2(), square()}) {
        auto vs = vertices(pair);
        for (const auto& a : vs)
            for (const auto& b : vs) {
                FaceId j = join(a, b);
                REQUIRE(join(b, a) == j);
                // result contains both arguments in the face order (reverse inclusion)
                REQUIRE(std::includes(a.facets.begin(), a.facets.end(), j.facets.begin(), j.facets.end()));
                REQUIRE(std::includes(b.facets.begin(), b.facets.end(), j.facets.begin(), j.facets.end()));
                REQUIRE(pair.is_simplex(j.facets));
            }
    }
}

TEST_CASE("dual basis at a vertex satisfies the duality pairing") {
    CharacteristicPair p = cp2();
    for (const auto& a : vertices(p)) {
        IntMatrix U = dual_basis_at_vertex(p, a);
        REQUIRE(U * lambda_at(p, a).transpose() == IntMatrix::identity(2));
    }
    // CP1 at {1}: u = (1)
    IntMatrix u = dual_basis_at_vertex(cp1(), FaceId{{0}});
    REQUIRE(u.at(0, 0) == 1);
    // standard basis rows give the identity
    CharacteristicPair std2;
    std2.n = 2;
    std2.d = 2;
    std2.nerve_max = {{0, 1}};
    std2.lambda = IntMatrix::identity(2);
    REQUIRE(dual_basis_at_vertex(std2, FaceId{{0, 1}}) == IntMatrix::identity(2));
}

TEST_CASE("from_fan builds the expected pairs") {
    Fan f1;
    f1.rays = {{Int(1)}, {Int(-1)}};
    f1.maximalCones = {{0}, {1}};
    CharacteristicPair p1 = from_fan(f1);
    REQUIRE(p1.n == 1);
    REQUIRE(p1.d == 2);
    REQUIRE(validate(p1).valid);
    REQUIRE(euler_characteristic(p1) == 2);

    Fan f2;
    f2.rays = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-1)}};
    f2.maximalCones = {{0, 1}, {0, 2}, {1, 2}};
    CharacteristicPair p2 = from_fan(f2);
    REQUIRE(validate(p2).valid);
    REQUIRE(p2.nerve_max == cp2().nerve_max);
    REQUIRE(euler_characteristic(p2) == 3);

    Fan h1; // Hirzebruch F_1
    h1.rays = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(1)}, {Int(0), Int(-1)}};
    h1.maximalCones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    CharacteristicPair ph = from_fan(h1);
    REQUIRE(validate(ph).valid);
    REQUIRE(euler_characteristic(ph) == 4);
}

TEST_CASE("from_fan rejects bad cones") {
    Fan bad;
    bad.rays = {{Int(1), Int(0)}, {Int(1), Int(2)}};
    bad.maximalCones = {{0, 1}};
    REQUIRE_THROWS_AS(from_fan(bad), NonSmoothCone);

    Fan open; // missing cone: ridge {2} appears once
    open.rays = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-1)}};
    open.maximalCones = {{0, 1}, {1, 2}};
    REQUIRE_THROWS_AS(from_fan(open), RidgePairingFailure);
}

TEST_CASE("euler characteristic of the shipped pairs") {
    REQUIRE(euler_characteristic(cp2()) == 3);
    REQUIRE(euler_characteristic(square()) == 4);
}

TEST_CASE("validate cross-check: all n-subsets") {
    // brute force: a pair is valid iff every n-subset that is a simplex has
    // determinant +-1 (plus the structural conditions)
    for (const auto& pair : {cp1(), cp2(), square()}) {
        ValidationReport rep = validate(pair);
        REQUIRE(rep.valid);
        for (const auto& a : vertices(pair)) {
            Int dt = det(lambda_at(pair, a));
            REQUIRE((dt == 1 || dt == -1));
        }
    }
}

TEST_CASE("poset view of a pair validates and has matching vertex count") {
    for (const auto& pair : {cp1(), cp2(), square()}) {
        GeneralFacePoset poset = poset_from_pair(pair);
        ValidationReport rep = validate_poset(poset);
        for (const auto& pr : rep.problems) INFO(pr);
        REQUIRE(rep.valid);
        REQUIRE(rep.vertex_count == euler_characteristic(pair));
    }
}
