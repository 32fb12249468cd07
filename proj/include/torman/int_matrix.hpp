#pragma once

#include "torman/error.hpp"
#include "torman/integer.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace torman {

// Sparse integer matrix. Absent entries are zero; stored entries are nonzero.
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows[0].size() : 0;
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int at(std::size_t r, std::size_t c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Int(0) : it->second;
    }

    void set(std::size_t r, std::size_t c, const Int& v) {
        if (v == 0)
            entries_.erase({r, c});
        else
            entries_[{r, c}] = v;
    }

    const std::map<std::pair<std::size_t, std::size_t>, Int>& entries() const { return entries_; }

    std::vector<std::vector<Int>> dense() const {
        std::vector<std::vector<Int>> d(rows_, std::vector<Int>(cols_, 0));
        for (const auto& [rc, v] : entries_) d[rc.first][rc.second] = v;
        return d;
    }

    std::vector<Int> row(std::size_t r) const {
        std::vector<Int> out(cols_, 0);
        for (std::size_t c = 0; c < cols_; ++c) out[c] = at(r, c);
        return out;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (const auto& [rc, v] : entries_) t.set(rc.second, rc.first, v);
        return t;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw Error("IntMatrix multiply: dimension mismatch");
        IntMatrix out(rows_, o.cols_);
        std::vector<std::vector<Int>> acc(rows_, std::vector<Int>(o.cols_, 0));
        for (const auto& [rc, v] : entries_)
            for (std::size_t j = 0; j < o.cols_; ++j) {
                Int w = o.at(rc.second, j);
                if (w != 0) acc[rc.first][j] += v * w;
            }
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < o.cols_; ++j) out.set(i, j, acc[i][j]);
        return out;
    }

    std::vector<Int> apply(const std::vector<Int>& x) const {
        if (x.size() != cols_) throw Error("IntMatrix apply: dimension mismatch");
        std::vector<Int> out(rows_, 0);
        for (const auto& [rc, v] : entries_) out[rc.first] += v * x[rc.second];
        return out;
    }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

  private:
    std::size_t rows_, cols_;
    std::map<std::pair<std::size_t, std::size_t>, Int> entries_;
};

struct SNFResult {
    std::vector<Int> diag;      // d_1 | d_2 | ..., all >= 0
    IntMatrix leftTransform;    // unimodular, rows x rows
    IntMatrix rightTransform;   // unimodular, cols x cols
};

namespace detail {

using Dense = std::vector<std::vector<Int>>;

inline void swap_rows(Dense& m, std::size_t a, std::size_t b) { std::swap(m[a], m[b]); }

inline void swap_cols(Dense& m, std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}

inline void add_row(Dense& m, std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += f * m[src][j];
}

inline void add_col(Dense& m, std::size_t dst, std::size_t src, const Int& f) {
    for (auto& row : m) row[dst] += f * row[src];
}

inline void negate_row(Dense& m, std::size_t r) {
    for (auto& x : m[r]) x = -x;
}

} // namespace detail

// Smith normal form: leftTransform * A * rightTransform = diag(diag).
// Pivot selection: smallest absolute value in the remaining submatrix.
inline SNFResult snf(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    detail::Dense D = A.dense();
    detail::Dense U = IntMatrix::identity(m).dense();
    detail::Dense V = IntMatrix::identity(n).dense();
    const std::size_t k = std::min(m, n);

    for (std::size_t t = 0; t < k;) {
        // locate smallest-|.|A nonzero entry in the trailing submatrix
        std::optional<std::pair<std::size_t, std::size_t>> piv;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (D[i][j] != 0 && (!piv || abs(D[i][j]) < abs(D[piv->first][piv->second])))
                    piv = {{i, j}};
        if (!piv) break; // submatrix is zero

        if (piv->first != t) { detail::swap_rows(D, t, piv->first); detail::swap_rows(U, t, piv->first); }
        if (piv->second != t) { detail::swap_cols(D, t, piv->second); detail::swap_cols(V, t, piv->second); }

        bool dirty = false;
        for (std::size_t i = t + 1; i < m; ++i) {
            if (D[i][t] == 0) continue;
            Int q = D[i][t] / D[t][t];
            if (q != 0) { detail::add_row(D, i, t, -q); detail::add_row(U, i, t, -q); }
            if (D[i][t] != 0) dirty = true; // remainder left, re-pivot
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            if (D[t][j] == 0) continue;
            Int q = D[t][j] / D[t][t];
            if (q != 0) { detail::add_col(D, j, t, -q); detail::add_col(V, j, t, -q); }
            if (D[t][j] != 0) dirty = true;
        }
        if (dirty) continue;

        // pivot must divide everything that remains; absorb a bad row and retry
        bool fixed = true;
        for (std::size_t i = t + 1; i < m && fixed; ++i)
            for (std::size_t j = t + 1; j < n && fixed; ++j)
                if (D[i][j] % D[t][t] != 0) {
                    detail::add_row(D, t, i, 1);
                    detail::add_row(U, t, i, 1);
                    fixed = false;
                }
        if (!fixed) continue;

        if (D[t][t] < 0) { detail::negate_row(D, t); detail::negate_row(U, t); }
        ++t;
    }

    SNFResult res;
    res.diag.resize(k);
    for (std::size_t i = 0; i < k; ++i) res.diag[i] = D[i][i];
    res.leftTransform = IntMatrix::from_rows(U);
    res.rightTransform = IntMatrix::from_rows(V);
    return res;
}

// Exact integer determinant (fraction-free Gaussian elimination).
inline Int det(const IntMatrix& A) {
    if (A.rows() != A.cols()) throw Error("det: matrix not square");
    const std::size_t n = A.rows();
    if (n == 0) return 1;
    detail::Dense D = A.dense();
    Int sign = 1, prev = 1;
    for (std::size_t t = 0; t + 1 < n; ++t) {
        if (D[t][t] == 0) {
            std::size_t r = t + 1;
            while (r < n && D[r][t] == 0) ++r;
            if (r == n) return 0;
            detail::swap_rows(D, t, r);
            sign = -sign;
        }
        for (std::size_t i = t + 1; i < n; ++i) {
            for (std::size_t j = t + 1; j < n; ++j)
                D[i][j] = (D[t][t] * D[i][j] - D[i][t] * D[t][j]) / prev;
            D[i][t] = 0;
        }
        prev = D[t][t];
    }
    return sign * D[n - 1][n - 1];
}

// Integer linear solve A x = b; nullopt when no integer solution exists.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& A, const std::vector<Int>& b) {
    if (b.size() != A.rows()) throw Error("solve_integer: dimension mismatch");
    SNFResult s = snf(A);
    std::vector<Int> c = s.leftTransform.apply(b);
    std::vector<Int> y(A.cols(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Int d = i < s.diag.size() ? s.diag[i] : Int(0);
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % d != 0) return std::nullopt;
            y[i] = c[i] / d;
        }
    }
    return s.rightTransform.apply(y);
}

// Inverse of a unimodular integer matrix (throws otherwise).
inline IntMatrix inverse_unimodular(const IntMatrix& A) {
    if (A.rows() != A.cols()) throw Error("inverse: matrix not square");
    SNFResult s = snf(A);
    for (const Int& d : s.diag)
        if (d != 1) throw Error("inverse: matrix is not unimodular");
    return s.rightTransform * s.leftTransform;
}

// Column echelon form by unimodular column operations, tracking pivot
// positions. Pivots are the topmost nonzero entries of the echelon columns.
struct ColumnEchelon {
    detail::Dense mat;                  // echelonized copy
    std::vector<std::size_t> pivotRows; // one per echelon column, increasing
    std::vector<Int> pivotValues;       // positive
};

inline ColumnEchelon column_echelon(const detail::Dense& M, std::size_t rows, std::size_t cols) {
    ColumnEchelon ce;
    ce.mat = M;
    std::size_t col = 0;
    for (std::size_t row = 0; row < rows && col < cols; ++row) {
        // gather columns >= col with a nonzero entry in this row down to one
        while (true) {
            std::vector<std::size_t> nz;
            for (std::size_t j = col; j < cols; ++j)
                if (ce.mat[row][j] != 0) nz.push_back(j);
            if (nz.empty() || nz.size() == 1) {
                if (nz.size() == 1 && nz[0] != col)
                    for (std::size_t i = 0; i < rows; ++i) std::swap(ce.mat[i][nz[0]], ce.mat[i][col]);
                if (!nz.empty()) {
                    if (ce.mat[row][col] < 0)
                        for (std::size_t i = 0; i < rows; ++i) ce.mat[i][col] = -ce.mat[i][col];
                    ce.pivotRows.push_back(row);
                    ce.pivotValues.push_back(ce.mat[row][col]);
                    ++col;
                }
                break;
            }
            std::size_t j1 = nz[0], j2 = nz[1];
            Int a = ce.mat[row][j1], b = ce.mat[row][j2];
            ExtGcd e = ext_gcd(a, b);
            Int ag = a / e.g, bg = b / e.g;
            for (std::size_t i = 0; i < rows; ++i) {
                Int c1 = ce.mat[i][j1], c2 = ce.mat[i][j2];
                ce.mat[i][j1] = e.p * c1 + e.q * c2;
                ce.mat[i][j2] = ag * c2 - bg * c1;
            }
        }
    }
    return ce;
}

} // namespace torman
