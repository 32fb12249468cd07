#pragma once

#include "torman/error.hpp"
#include "torman/int_matrix.hpp"
#include "torman/poly.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torman {

// coordinate vector over the Z-basis of a presented base ring
using BaseElem = std::vector<Int>;

inline int fuel_limit() {
    if (const char* env = std::getenv("TORMAN_FUEL")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 64;
}

// Finite multiplication table over a free Z-basis; shared core of the
// cohomology and K-theory base rings.
class MultTable {
  public:
    struct BasisEntry {
        std::string name;
        int degree = 0;
    };

    MultTable() = default;
    MultTable(std::vector<BasisEntry> basis, std::vector<std::vector<BaseElem>> table)
        : basis_(std::move(basis)), table_(std::move(table)) {
        const std::size_t r = basis_.size();
        if (table_.size() != r) throw Error("base ring: multiplication table must be rank x rank");
        for (const auto& row : table_) {
            if (row.size() != r) throw Error("base ring: multiplication table must be rank x rank");
            for (const BaseElem& e : row)
                if (e.size() != r) throw Error("base ring: product vector has wrong length");
        }
        unit_ = find_unit();
        validate_table();
    }

    std::size_t rank() const { return basis_.size(); }
    const std::vector<BasisEntry>& basis() const { return basis_; }
    std::size_t unit_index() const { return unit_; }
    int degree_of(std::size_t i) const { return basis_[i].degree; }

    int max_degree() const {
        int m = 0;
        for (const auto& b : basis_) m = std::max(m, b.degree);
        return m;
    }

    BaseElem zero() const { return BaseElem(rank(), 0); }

    BaseElem unit() const {
        BaseElem e = zero();
        e[unit_] = 1;
        return e;
    }

    BaseElem basis_elem(std::size_t i) const {
        BaseElem e = zero();
        e[i] = 1;
        return e;
    }

    static bool is_zero(const BaseElem& a) {
        for (const Int& x : a)
            if (x != 0) return false;
        return true;
    }

    BaseElem add(const BaseElem& a, const BaseElem& b) const {
        BaseElem c = a;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
        return c;
    }

    BaseElem sub(const BaseElem& a, const BaseElem& b) const {
        BaseElem c = a;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
        return c;
    }

    BaseElem scale(const BaseElem& a, const Int& k) const {
        BaseElem c = a;
        for (Int& x : c) x *= k;
        return c;
    }

    BaseElem mul(const BaseElem& a, const BaseElem& b) const {
        BaseElem c = zero();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (b[j] == 0) continue;
                const BaseElem& p = table_[i][j];
                for (std::size_t k = 0; k < c.size(); ++k) c[k] += a[i] * b[j] * p[k];
            }
        }
        return c;
    }

    BaseElem pow(const BaseElem& a, std::int64_t k) const {
        if (k < 0) throw Error("base ring: negative power without an inverse");
        BaseElem r = unit();
        for (std::int64_t i = 0; i < k; ++i) r = mul(r, a);
        return r;
    }

    // multiplication-by-a matrix, column k = a * basis_k
    IntMatrix mult_matrix(const BaseElem& a) const {
        IntMatrix m(rank(), rank());
        for (std::size_t k = 0; k < rank(); ++k) {
            BaseElem col = mul(a, basis_elem(k));
            for (std::size_t i = 0; i < rank(); ++i) m.set(i, k, col[i]);
        }
        return m;
    }

    std::optional<BaseElem> inverse(const BaseElem& a) const { return solve_integer(mult_matrix(a), unit()); }

    // a^k = 0 for some k <= fuel?
    bool is_nilpotent(const BaseElem& a, int fuel) const {
        BaseElem p = a;
        for (int i = 0; i < fuel; ++i) {
            if (is_zero(p)) return true;
            p = mul(p, a);
        }
        return is_zero(p);
    }

    std::string render(const BaseElem& a) const {
        std::string out;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            Int c = a[i];
            std::string mono = i == unit_ ? "" : basis_[i].name;
            std::string piece;
            Int ac = abs(c);
            if (mono.empty())
                piece = ac.str();
            else
                piece = (ac == 1 ? mono : ac.str() + "*" + mono);
            if (out.empty())
                out += (c < 0 ? "-" : "") + piece;
            else
                out += (c < 0 ? " - " : " + ") + piece;
        }
        return out.empty() ? "0" : out;
    }

  private:
    std::size_t find_unit() const {
        for (std::size_t u = 0; u < rank(); ++u) {
            if (basis_[u].degree != 0) continue;
            bool ok = true;
            for (std::size_t i = 0; i < rank() && ok; ++i) {
                if (table_[u][i] != basis_elem_raw(i) || table_[i][u] != basis_elem_raw(i)) ok = false;
            }
            if (ok) return u;
        }
        throw Error("base ring: no two-sided unit of degree 0 in the table");
    }

    BaseElem basis_elem_raw(std::size_t i) const {
        BaseElem e(basis_.size(), 0);
        e[i] = 1;
        return e;
    }

    void validate_table() {
        const std::size_t r = rank();
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                // grading additivity
                for (std::size_t k = 0; k < r; ++k)
                    if (table_[i][j][k] != 0 && basis_[k].degree != basis_[i].degree + basis_[j].degree)
                        throw Error("base ring: product " + basis_[i].name + "*" + basis_[j].name +
                                    " violates the grading");
                // graded commutativity
                BaseElem ji = table_[j][i];
                if ((basis_[i].degree % 2) && (basis_[j].degree % 2))
                    for (Int& x : ji) x = -x;
                if (table_[i][j] != ji)
                    throw Error("base ring: table is not graded-commutative at " + basis_[i].name + "," +
                                basis_[j].name);
            }
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t k = 0; k < r; ++k)
                    if (mul(table_[i][j], basis_elem_raw(k)) != mul(basis_elem_raw(i), table_[j][k]))
                        throw Error("base ring: multiplication table is not associative");
    }

    std::vector<BasisEntry> basis_;
    std::vector<std::vector<BaseElem>> table_; // table[i][j] = basis_i * basis_j
    std::size_t unit_ = 0;
};

// Presented H^*(B) together with the characteristic-class assignment
// u -> c_1(xi_u) on the basis characters of M.
class BaseCohomRing {
  public:
    BaseCohomRing(MultTable table, std::vector<BaseElem> charClass)
        : table_(std::move(table)), charClass_(std::move(charClass)) {
        for (const BaseElem& c : charClass_) {
            if (c.size() != table_.rank()) throw Error("char_class: wrong coefficient length");
            for (std::size_t i = 0; i < c.size(); ++i)
                if (c[i] != 0 && table_.degree_of(i) != 2)
                    throw Error("char_class: values must be homogeneous of degree 2");
        }
        // positive-degree part must be nilpotent; grading makes it so, and we
        // probe it directly within the fuel bound
        int fuel = fuel_limit();
        for (std::size_t i = 0; i < table_.rank(); ++i)
            if (table_.degree_of(i) > 0 && !table_.is_nilpotent(table_.basis_elem(i), fuel))
                throw FuelExhausted("base ring: positive-degree generator is not visibly nilpotent");
    }

    const MultTable& table() const { return table_; }
    std::size_t torus_rank() const { return charClass_.size(); }
    const BaseElem& char_class(std::size_t j) const { return charClass_[j]; }

    // c_1(xi_u) for u = sum u_j e_j, extended Z-linearly
    BaseElem char_class_of(const std::vector<Int>& u) const {
        BaseElem out = table_.zero();
        for (std::size_t j = 0; j < charClass_.size(); ++j)
            out = table_.add(out, table_.scale(charClass_[j], u[j]));
        return out;
    }

    // evaluate a polynomial in the sym variables t_j at t_j = c_1(xi_{e_j})
    BaseElem evaluate_sym(const Poly& c) const {
        BaseElem out = table_.zero();
        for (const auto& [e, k] : c.terms()) {
            BaseElem term = table_.unit();
            for (std::size_t j = 0; j < e.size(); ++j)
                if (e[j] != 0) term = table_.mul(term, table_.pow(charClass_[j], e[j]));
            out = table_.add(out, table_.scale(term, k));
        }
        return out;
    }

    static BaseCohomRing point(std::size_t torusRank) {
        MultTable t({{"1", 0}}, {{BaseElem{1}}});
        return BaseCohomRing(std::move(t), std::vector<BaseElem>(torusRank, BaseElem{0}));
    }

  private:
    MultTable table_;
    std::vector<BaseElem> charClass_; // one per basis character of M
};

// Presented K^*(B) together with the line-class assignment u -> [xi_u];
// every [xi_u] must be a unit whose inverse is computed at load.
class BaseKRing {
  public:
    BaseKRing(MultTable table, std::vector<BaseElem> lineClass)
        : table_(std::move(table)), lineClass_(std::move(lineClass)) {
        int fuel = fuel_limit();
        for (const BaseElem& c : lineClass_) {
            if (c.size() != table_.rank()) throw Error("line_class: wrong coefficient length");
            auto inv = table_.inverse(c);
            if (!inv) throw Error("line_class: value " + table_.render(c) + " is not a unit");
            lineClassInv_.push_back(*inv);
            BaseElem cm1 = table_.sub(c, table_.unit());
            if (!table_.is_nilpotent(cm1, fuel))
                throw FuelExhausted("line_class: [xi_u] - 1 is not visibly nilpotent");
        }
    }

    const MultTable& table() const { return table_; }
    std::size_t torus_rank() const { return lineClass_.size(); }
    const BaseElem& line_class(std::size_t j) const { return lineClass_[j]; }
    const BaseElem& line_class_inv(std::size_t j) const { return lineClassInv_[j]; }

    // [xi_u] for u in M, using the precomputed inverses for negative entries
    BaseElem line_class_of(const std::vector<Int>& u) const {
        BaseElem out = table_.unit();
        for (std::size_t j = 0; j < u.size(); ++j) {
            std::int64_t e = static_cast<std::int64_t>(u[j]);
            const BaseElem& f = e >= 0 ? lineClass_[j] : lineClassInv_[j];
            for (std::int64_t i = 0; i < (e >= 0 ? e : -e); ++i) out = table_.mul(out, f);
        }
        return out;
    }

    // evaluate an RT element at chi^{e_j} = [xi_{e_j}]
    BaseElem evaluate_rt(const Poly& c) const {
        BaseElem out = table_.zero();
        for (const auto& [e, k] : c.terms()) {
            BaseElem term = table_.unit();
            for (std::size_t j = 0; j < e.size(); ++j) {
                const BaseElem& f = e[j] >= 0 ? lineClass_[j] : lineClassInv_[j];
                for (std::int64_t i = 0; i < (e[j] >= 0 ? e[j] : -e[j]); ++i) term = table_.mul(term, f);
            }
            out = table_.add(out, table_.scale(term, k));
        }
        return out;
    }

    static BaseKRing point(std::size_t torusRank) {
        MultTable t({{"1", 0}}, {{BaseElem{1}}});
        return BaseKRing(std::move(t), std::vector<BaseElem>(torusRank, BaseElem{1}));
    }

  private:
    MultTable table_;
    std::vector<BaseElem> lineClass_, lineClassInv_;
};

} // namespace torman
