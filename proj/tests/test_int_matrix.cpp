#include <catch2/catch_amalgamated.hpp>

#include "torman/int_matrix.hpp"

#include <random>

using namespace torman;

namespace {

IntMatrix mat(const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<Int>> r;
    for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
    return IntMatrix::from_rows(r);
}

// independent oracle: U*A*V must literally equal diag(d), transforms must be
// unimodular, and the divisor chain must hold
void check_snf(const IntMatrix& A) {
    SNFResult s = snf(A);
    IntMatrix prod = s.leftTransform * A * s.rightTransform;
    IntMatrix expected(A.rows(), A.cols());
    for (std::size_t i = 0; i < s.diag.size(); ++i) expected.set(i, i, s.diag[i]);
    REQUIRE(prod == expected);
    Int dl = det(s.leftTransform);
    Int dr = det(s.rightTransform);
    REQUIRE((dl == 1 || dl == -1));
    REQUIRE((dr == 1 || dr == -1));
    for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) {
        REQUIRE(s.diag[i] >= 0);
        if (s.diag[i] == 0)
            REQUIRE(s.diag[i + 1] == 0);
        else
            REQUIRE(s.diag[i + 1] % s.diag[i] == 0);
    }
}

} // namespace

TEST_CASE("snf of diag(2,3)") {
    IntMatrix A = mat({{2, 0}, {0, 3}});
    SNFResult s = snf(A);
    REQUIRE(s.diag == std::vector<Int>{1, 6});
    check_snf(A);
}

TEST_CASE("snf of identity") {
    IntMatrix A = IntMatrix::identity(3);
    SNFResult s = snf(A);
    REQUIRE(s.diag == std::vector<Int>{1, 1, 1});
    check_snf(A);
}

TEST_CASE("snf of zero matrix") {
    IntMatrix A(2, 2);
    SNFResult s = snf(A);
    REQUIRE(s.diag == std::vector<Int>{0, 0});
    check_snf(A);
}

TEST_CASE("snf randomized property") {
    std::mt19937_64 rng(20240901);
    std::uniform_int_distribution<int> dim(1, 5), val(-9, 9);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t m = static_cast<std::size_t>(dim(rng)), n = static_cast<std::size_t>(dim(rng));
        IntMatrix A(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) A.set(i, j, val(rng));
        check_snf(A);
    }
}

TEST_CASE("solve_integer examples") {
    REQUIRE(solve_integer(mat({{2}}), {Int(4)}) == std::vector<Int>{2});
    REQUIRE(!solve_integer(mat({{2}}), {Int(3)}).has_value());

    auto x = solve_integer(mat({{1, 1}, {0, 2}}), {Int(3), Int(2)});
    REQUIRE(x.has_value());
    REQUIRE(*x == std::vector<Int>{2, 1});
    // substitute back
    REQUIRE(mat({{1, 1}, {0, 2}}).apply(*x) == std::vector<Int>{3, 2});
}

TEST_CASE("solve_integer agrees with brute-force box search on 3x3") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> val(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix A(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) A.set(i, j, val(rng));
        std::vector<Int> b = {val(rng), val(rng), val(rng)};
        auto x = solve_integer(A, b);
        if (x) {
            REQUIRE(A.apply(*x) == b);
        } else {
            // solver is complete, so the box must contain no solution either
            for (int a0 = -6; a0 <= 6; ++a0)
                for (int a1 = -6; a1 <= 6; ++a1)
                    for (int a2 = -6; a2 <= 6; ++a2)
                        REQUIRE(A.apply({Int(a0), Int(a1), Int(a2)}) != b);
        }
    }
    // solvable instances: plant a solution, solver must find one
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix A(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) A.set(i, j, val(rng));
        std::vector<Int> x0 = {val(rng), val(rng), val(rng)};
        std::vector<Int> b = A.apply(x0);
        auto x = solve_integer(A, b);
        REQUIRE(x.has_value());
        REQUIRE(A.apply(*x) == b);
    }
}

TEST_CASE("inverse of unimodular matrix") {
    IntMatrix A = mat({{0, 1}, {-1, -1}});
    IntMatrix inv = inverse_unimodular(A);
    REQUIRE(A * inv == IntMatrix::identity(2));
    REQUIRE(inv * A == IntMatrix::identity(2));
    REQUIRE_THROWS_AS(inverse_unimodular(mat({{2, 0}, {0, 1}})), Error);
}

TEST_CASE("column echelon pivots") {
    // columns (1,0,-1) and (0,1,-1): pivots in rows 0 and 1
    detail::Dense M = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-1)}};
    ColumnEchelon ce = column_echelon(M, 3, 2);
    REQUIRE(ce.pivotRows == std::vector<std::size_t>{0, 1});
    REQUIRE(ce.pivotValues == std::vector<Int>{1, 1});
}
