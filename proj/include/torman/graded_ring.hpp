#pragma once

#include "torman/error.hpp"
#include "torman/int_matrix.hpp"
#include "torman/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torman {

// Finitely presented connected graded ring Z[vars]/(relations), with a
// distinguished list of degree-2 linear forms through which the polynomial
// ring Sym(M) acts. Graded pieces are handled by exact integer linear
// algebra: Smith normal form for ranks and torsion, column echelon form for
// monomial basis extraction.
//
// An optional prune predicate marks monomials that are already zero in the
// ring (e.g. monomials on non-faces); pruned coordinates are dropped from
// every matrix.
class GradedQuotient {
  public:
    using Prune = std::function<bool(const Exp&)>;

    GradedQuotient(std::vector<std::string> vars, std::vector<int> varDegrees,
                   std::vector<Poly> relations, std::vector<Poly> linForms, Prune prune = nullptr)
        : vars_(std::move(vars)), varDegrees_(std::move(varDegrees)), relations_(std::move(relations)),
          linForms_(std::move(linForms)), prune_(std::move(prune)) {
        if (vars_.size() != varDegrees_.size()) throw Error("GradedQuotient: one degree per variable");
        for (const Poly& r : relations_) relDegrees_.push_back(poly_degree(r));
        for (const Poly& l : linForms_)
            if (poly_degree(l) > 2) throw Error("GradedQuotient: linear forms must have degree 2");
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Poly>& relations() const { return relations_; }
    const std::vector<Poly>& lin_forms() const { return linForms_; }

    int monomial_degree(const Exp& e) const {
        int deg = 0;
        for (std::size_t i = 0; i < e.size(); ++i) deg += static_cast<int>(e[i]) * varDegrees_[i];
        return deg;
    }

    // weighted degree of a homogeneous polynomial (throws when mixed)
    int poly_degree(const Poly& p) const {
        std::optional<int> deg;
        for (const auto& [e, c] : p.terms()) {
            int d = monomial_degree(e);
            if (deg && *deg != d) throw Error("polynomial is not homogeneous");
            deg = d;
        }
        return deg.value_or(0);
    }

    // all unpruned monomials of the given degree, graded-lex descending
    const std::vector<Exp>& monomials(int deg) const {
        auto it = monomialCache_.find(deg);
        if (it != monomialCache_.end()) return it->second;
        std::vector<Exp> out;
        Exp cur(vars_.size(), 0);
        enumerate(deg, 0, cur, out);
        std::sort(out.begin(), out.end(), [](const Exp& a, const Exp& b) { return b < a; });
        return monomialCache_.emplace(deg, std::move(out)).first->second;
    }

    struct Degree {
        std::vector<Exp> monomials;   // row order, graded-lex descending
        detail::Dense idealColumns;   // relation multiples then lin-form multiples
        std::size_t relColumnCount = 0;
        std::vector<Int> divisors;    // nonzero SNF divisors of idealColumns
        std::vector<Exp> basis;       // quotient basis monomials
        std::size_t rank = 0;         // = monomials.size() - matrix rank
    };

    const Degree& degree(int deg) const {
        auto it = cache_.find(deg);
        if (it != cache_.end()) return it->second;
        Degree d = compute_degree(deg);
        return cache_.emplace(deg, std::move(d)).first->second;
    }

    // Reduce p to an integer combination of the per-degree basis monomials.
    // Solves against the ideal columns, so membership is certified exactly.
    std::map<Exp, Int> reduce(const Poly& p) const {
        if (p.vars() != vars_) throw VariableMismatch("reduce: wrong variable list");
        std::map<Exp, Int> out;
        for (const auto& [deg, part] : homogeneous_parts(p)) {
            const Degree& dd = degree(deg);
            std::vector<Int> w = vectorize(part, dd.monomials);
            const std::size_t N = dd.monomials.size();
            const std::size_t K = dd.idealColumns.empty() ? 0 : dd.idealColumns[0].size();
            IntMatrix M(N, K + dd.basis.size());
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = 0; j < K; ++j) M.set(i, j, dd.idealColumns[i][j]);
            std::map<Exp, std::size_t> rowIndex;
            for (std::size_t i = 0; i < N; ++i) rowIndex[dd.monomials[i]] = i;
            for (std::size_t b = 0; b < dd.basis.size(); ++b) M.set(rowIndex.at(dd.basis[b]), K + b, 1);
            auto sol = solve_integer(M, w);
            if (!sol)
                throw Error("reduce: element does not lie in the span of ideal and basis (degree " +
                            std::to_string(deg) + ")");
            for (std::size_t b = 0; b < dd.basis.size(); ++b) {
                Int c = (*sol)[K + b];
                if (c != 0) {
                    out[dd.basis[b]] += c;
                    if (out[dd.basis[b]] == 0) out.erase(dd.basis[b]);
                }
            }
        }
        return out;
    }

    // Decompose p in the relations-only quotient as sum_b c_b(t) * x^b over
    // the given homogeneous monomial basis; coefficients live in the
    // polynomial ring on symVars, acting through the linear forms.
    std::map<Exp, Poly> sym_decompose(const Poly& p, const std::vector<Exp>& basis,
                                      const std::vector<std::string>& symVars) const {
        if (p.vars() != vars_) throw VariableMismatch("sym_decompose: wrong variable list");
        if (symVars.size() != linForms_.size())
            throw Error("sym_decompose: one sym variable per linear form");
        std::map<Exp, Poly> out;
        for (const Exp& b : basis) out.emplace(b, Poly(symVars));

        for (const auto& [deg, part] : homogeneous_parts(p)) {
            const std::vector<Exp>& mons = monomials(deg);
            std::vector<Int> w = vectorize(part, mons);

            // relation-multiple columns are free variables of the solve
            detail::Dense relCols = relation_columns(deg, mons);
            const std::size_t K = relCols.empty() ? 0 : relCols[0].size();

            struct SymCol {
                Exp basisMonomial;
                Exp beta;
            };
            std::vector<SymCol> symCols;
            detail::Dense symMat(mons.size());
            for (const Exp& b : basis) {
                int db = monomial_degree(b);
                int rem = deg - db;
                if (rem < 0 || rem % 2 != 0) continue;
                for (const Exp& beta : compositions(static_cast<std::size_t>(linForms_.size()), rem / 2)) {
                    Poly col = Poly::monomial(vars_, b);
                    for (std::size_t j = 0; j < linForms_.size(); ++j)
                        for (std::int64_t k = 0; k < beta[j]; ++k) col *= linForms_[j];
                    std::vector<Int> v = vectorize(col, mons);
                    for (std::size_t i = 0; i < mons.size(); ++i) symMat[i].push_back(v[i]);
                    symCols.push_back({b, beta});
                }
            }

            IntMatrix M(mons.size(), K + symCols.size());
            for (std::size_t i = 0; i < mons.size(); ++i) {
                for (std::size_t j = 0; j < K; ++j) M.set(i, j, relCols[i][j]);
                for (std::size_t j = 0; j < symCols.size(); ++j) M.set(i, K + j, symMat[i][j]);
            }
            auto sol = solve_integer(M, w);
            if (!sol)
                throw DecompositionFailed("sym_decompose: no integer decomposition at degree " +
                                          std::to_string(deg));
            for (std::size_t j = 0; j < symCols.size(); ++j)
                out.at(symCols[j].basisMonomial).add_term(symCols[j].beta, (*sol)[K + j]);
        }

        verify_reconstruction(p, out);
        for (auto it = out.begin(); it != out.end();) {
            if (it->second.is_zero())
                it = out.erase(it);
            else
                ++it;
        }
        return out;
    }

    // substitute the linear forms for the sym variables and compare with p
    // modulo the relations (exact membership solve)
    void verify_reconstruction(const Poly& p, const std::map<Exp, Poly>& decomposition) const {
        Poly recon(vars_);
        for (const auto& [b, c] : decomposition) {
            Poly cb = substitute(c, linForms_, vars_);
            recon += cb * Poly::monomial(vars_, b);
        }
        Poly diff = recon - p;
        for (const auto& [deg, part] : homogeneous_parts(diff)) {
            const std::vector<Exp>& mons = monomials(deg);
            std::vector<Int> w = vectorize(part, mons);
            detail::Dense relCols = relation_columns(deg, mons);
            const std::size_t K = relCols.empty() ? 0 : relCols[0].size();
            bool zero = true;
            for (const Int& x : w)
                if (x != 0) zero = false;
            if (zero) continue;
            IntMatrix M(mons.size(), K);
            for (std::size_t i = 0; i < mons.size(); ++i)
                for (std::size_t j = 0; j < K; ++j) M.set(i, j, relCols[i][j]);
            if (!solve_integer(M, w))
                throw DecompositionFailed("sym_decompose: reconstruction differs from input");
        }
    }

    // vector of coefficients of p over the listed monomials; pruned monomials
    // of p are dropped (they are zero in the ring), anything else off-list is
    // an error
    std::vector<Int> vectorize(const Poly& p, const std::vector<Exp>& mons) const {
        std::map<Exp, std::size_t> idx;
        for (std::size_t i = 0; i < mons.size(); ++i) idx[mons[i]] = i;
        std::vector<Int> v(mons.size(), 0);
        for (const auto& [e, c] : p.terms()) {
            if (prune_ && prune_(e)) continue;
            auto it = idx.find(e);
            if (it == idx.end()) throw Error("vectorize: monomial outside the degree slice");
            v[it->second] = c;
        }
        return v;
    }

    std::map<int, Poly> homogeneous_parts(const Poly& p) const {
        std::map<int, Poly> parts;
        for (const auto& [e, c] : p.terms()) {
            int d = monomial_degree(e);
            auto it = parts.find(d);
            if (it == parts.end()) it = parts.emplace(d, Poly(vars_)).first;
            it->second.add_term(e, c);
        }
        return parts;
    }

    static std::vector<Exp> compositions(std::size_t parts, int total) {
        std::vector<Exp> out;
        Exp cur(parts, 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rem) {
            if (i + 1 == parts) {
                cur[i] = rem;
                out.push_back(cur);
                return;
            }
            for (int v = 0; v <= rem; ++v) {
                cur[i] = v;
                rec(i + 1, rem - v);
            }
        };
        if (parts == 0) {
            if (total == 0) out.push_back({});
            return out;
        }
        rec(0, total);
        return out;
    }

  private:
    void enumerate(int remaining, std::size_t varIdx, Exp& cur, std::vector<Exp>& out) const {
        if (remaining == 0) {
            for (std::size_t i = varIdx; i < cur.size(); ++i) cur[i] = 0;
            if (!prune_ || !prune_(cur)) out.push_back(cur);
            return;
        }
        if (varIdx == vars_.size()) return;
        int w = varDegrees_[varIdx];
        for (int k = 0; k * w <= remaining; ++k) {
            cur[varIdx] = k;
            enumerate(remaining - k * w, varIdx + 1, cur, out);
        }
        cur[varIdx] = 0;
    }

    detail::Dense relation_columns(int deg, const std::vector<Exp>& mons) const {
        detail::Dense cols(mons.size());
        for (std::size_t r = 0; r < relations_.size(); ++r) {
            int rem = deg - relDegrees_[r];
            if (rem < 0) continue;
            for (const Exp& mu : monomials(rem)) {
                Poly prod = relations_[r] * Poly::monomial(vars_, mu);
                std::vector<Int> v = vectorize(prod, mons);
                bool nonzero = false;
                for (const Int& x : v)
                    if (x != 0) nonzero = true;
                if (!nonzero) continue;
                for (std::size_t i = 0; i < mons.size(); ++i) cols[i].push_back(v[i]);
            }
        }
        return cols;
    }

    Degree compute_degree(int deg) const {
        Degree d;
        d.monomials = monomials(deg);
        const std::size_t N = d.monomials.size();

        d.idealColumns = relation_columns(deg, d.monomials);
        if (d.idealColumns.empty()) d.idealColumns.resize(N);
        d.relColumnCount = N ? d.idealColumns[0].size() : 0;
        if (deg >= 2) {
            for (const Poly& l : linForms_)
                for (const Exp& mu : monomials(deg - 2)) {
                    Poly prod = l * Poly::monomial(vars_, mu);
                    std::vector<Int> v = vectorize(prod, d.monomials);
                    for (std::size_t i = 0; i < N; ++i) d.idealColumns[i].push_back(v[i]);
                }
        }
        const std::size_t K = N ? d.idealColumns[0].size() : 0;

        IntMatrix M(N, K);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < K; ++j) M.set(i, j, d.idealColumns[i][j]);
        SNFResult s = snf(M);
        std::size_t matRank = 0;
        for (const Int& dv : s.diag)
            if (dv != 0) {
                d.divisors.push_back(dv);
                ++matRank;
                if (dv != 1)
                    throw TorsionDetected("graded piece in degree " + std::to_string(deg) +
                                          " has elementary divisor " + dv.str());
            }
        d.rank = N - matRank;

        // monomial basis: complement of the echelon pivot rows
        ColumnEchelon ce = column_echelon(d.idealColumns, N, K);
        bool unitPivots = true;
        for (const Int& pv : ce.pivotValues)
            if (pv != 1) unitPivots = false;
        if (unitPivots && ce.pivotRows.size() == matRank) {
            std::vector<bool> pivot(N, false);
            for (std::size_t r : ce.pivotRows) pivot[r] = true;
            for (std::size_t i = 0; i < N; ++i)
                if (!pivot[i]) d.basis.push_back(d.monomials[i]);
        } else {
            d.basis = greedy_basis(d, matRank);
        }
        if (d.basis.size() != d.rank)
            throw DecompositionFailed("basis extraction failed in degree " + std::to_string(deg));
        return d;
    }

    // Fallback: search for a monomial set (small monomials first) whose
    // classes form a basis of the quotient. A candidate set is accepted only
    // when [ideal columns | unit columns] is onto, certified by SNF.
    std::vector<Exp> greedy_basis(const Degree& d, std::size_t matRank) const {
        const std::size_t N = d.monomials.size();
        const std::size_t K = N ? d.idealColumns[0].size() : 0;
        std::vector<std::size_t> chosen;

        // ascending graded-lex candidate order; rank must grow at each pick
        // and the final set must make the matrix onto with unit divisors
        std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t nextIdx, std::size_t curRank) {
            if (chosen.size() == d.rank) return true;
            for (std::size_t step = nextIdx; step < N; ++step) {
                std::size_t row = N - 1 - step;
                std::vector<std::size_t> trial = chosen;
                trial.push_back(row);
                IntMatrix M(N, K + trial.size());
                for (std::size_t i = 0; i < N; ++i)
                    for (std::size_t j = 0; j < K; ++j) M.set(i, j, d.idealColumns[i][j]);
                for (std::size_t j = 0; j < trial.size(); ++j) M.set(trial[j], K + j, 1);
                SNFResult s = snf(M);
                std::size_t rank = 0;
                bool unit = true;
                for (const Int& dv : s.diag)
                    if (dv != 0) {
                        ++rank;
                        if (dv != 1) unit = false;
                    }
                if (rank != curRank + 1) continue;
                if (trial.size() == d.rank && (!unit || rank != N)) continue;
                chosen.push_back(row);
                if (dfs(step + 1, rank)) return true;
                chosen.pop_back();
            }
            return false;
        };

        if (d.rank > 0 && !dfs(0, matRank))
            throw DecompositionFailed("no monomial basis of the graded piece exists");
        std::vector<Exp> out;
        for (std::size_t r : chosen) out.push_back(d.monomials[r]);
        std::sort(out.begin(), out.end(), [](const Exp& a, const Exp& b) { return b < a; });
        return out;
    }

    std::vector<std::string> vars_;
    std::vector<int> varDegrees_;
    std::vector<Poly> relations_;
    std::vector<int> relDegrees_;
    std::vector<Poly> linForms_;
    Prune prune_;
    mutable std::map<int, std::vector<Exp>> monomialCache_;
    mutable std::map<int, Degree> cache_;
};

} // namespace torman
