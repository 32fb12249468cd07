#pragma once

#include "torman/error.hpp"
#include "torman/poly.hpp"

#include <utility>
#include <vector>

namespace torman {

// Determinant of a square matrix of Laurent polynomials by Bareiss
// fraction-free elimination; every division is exact by the Sylvester
// identity.
inline Poly laurent_det(std::vector<std::vector<Poly>> a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw Error("laurent_det: matrix not square");
    if (n == 0) throw Error("laurent_det: empty matrix");
    const std::vector<std::string>& vars = a[0][0].vars();
    bool neg = false;
    Poly prev = Poly::constant(vars, 1);
    for (std::size_t t = 0; t + 1 < n; ++t) {
        if (a[t][t].is_zero()) {
            std::size_t r = t + 1;
            while (r < n && a[r][t].is_zero()) ++r;
            if (r == n) return Poly(vars);
            std::swap(a[t], a[r]);
            neg = !neg;
        }
        for (std::size_t i = t + 1; i < n; ++i) {
            for (std::size_t j = t + 1; j < n; ++j) {
                Poly num = a[t][t] * a[i][j] - a[i][t] * a[t][j];
                auto q = try_exact_divide(num, prev);
                if (!q) throw Error("laurent_det: Bareiss division failed (internal)");
                a[i][j] = *q;
            }
            a[i][t] = Poly(vars);
        }
        prev = a[t][t];
    }
    return neg ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

// Result of solving A x = b over the fraction field of the Laurent ring.
struct LaurentSolveResult {
    enum class Status { ok, singular, not_in_ring };
    Status status = Status::ok;
    std::vector<Poly> solution;                   // valid when status == ok
    std::vector<std::pair<Poly, Poly>> witnesses; // (numerator, denominator) per stuck entry

    bool ok() const { return status == Status::ok; }
};

// Cramer solve with Bareiss determinants: x_i = det(A_i)/det(A), accepted
// only when the division clears to an honest Laurent polynomial.
inline LaurentSolveResult solve_over_laurent_fraction_field(const std::vector<std::vector<Poly>>& A,
                                                            const std::vector<Poly>& b) {
    const std::size_t n = A.size();
    if (b.size() != n) throw Error("laurent solve: dimension mismatch");
    LaurentSolveResult res;
    Poly D = laurent_det(A);
    if (D.is_zero()) {
        res.status = LaurentSolveResult::Status::singular;
        return res;
    }
    res.solution.resize(n, Poly(D.vars()));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<Poly>> Ai = A;
        for (std::size_t r = 0; r < n; ++r) Ai[r][i] = b[r];
        Poly Di = laurent_det(Ai);
        auto q = try_exact_divide(Di, D);
        if (q) {
            res.solution[i] = *q;
        } else {
            res.status = LaurentSolveResult::Status::not_in_ring;
            res.witnesses.emplace_back(Di, D);
        }
    }
    if (!res.ok()) res.solution.clear();
    return res;
}

} // namespace torman
