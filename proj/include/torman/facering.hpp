#pragma once

#include "torman/charpair.hpp"
#include "torman/graded_ring.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace torman {

// Presentation of H^*(X): Stanley-Reisner generators (minimal non-faces) and
// one linear form per basis character of M.
struct CohomPresentation {
    std::vector<std::string> variables;          // x1..xd, degree 2 each
    std::vector<std::vector<int>> srGenerators;  // minimal non-faces, 0-based
    std::vector<Poly> linearForms;               // n forms over the variables
};

struct GradedBasis {
    int maxDegree = 0;
    std::vector<std::size_t> ranks;            // per cohomological degree 0..maxDegree
    std::map<int, std::vector<Exp>> basis;     // nonzero degrees only
    std::size_t total = 0;

    std::vector<Exp> flatten() const {
        std::vector<Exp> out;
        for (const auto& [deg, b] : basis) out.insert(out.end(), b.begin(), b.end());
        return out;
    }
};

inline std::vector<std::vector<int>> min_nonfaces(const CharacteristicPair& pair) {
    std::vector<std::vector<int>> out;
    std::vector<int> comb;
    // a minimal non-face has at most n+1 elements
    for (int size = 1; size <= pair.n + 1; ++size) {
        comb.assign(static_cast<std::size_t>(size), 0);
        std::function<void(int, int)> rec = [&](int start, int k) {
            if (k == size) {
                std::vector<int> s(comb.begin(), comb.end());
                if (pair.is_simplex(s)) return;
                for (int drop = 0; drop < size; ++drop) {
                    std::vector<int> sub = s;
                    sub.erase(sub.begin() + drop);
                    if (!pair.is_simplex(sub)) return; // not minimal
                }
                out.push_back(s);
                return;
            }
            for (int i = start; i < pair.d; ++i) {
                comb[static_cast<std::size_t>(k)] = i;
                rec(i + 1, k + 1);
            }
        };
        rec(0, 0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::string> x_variables(int d) {
    std::vector<std::string> v;
    for (int i = 1; i <= d; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

inline std::vector<std::string> y_variables(int d) {
    std::vector<std::string> v;
    for (int i = 1; i <= d; ++i) v.push_back("y" + std::to_string(i));
    return v;
}

inline std::vector<std::string> t_variables(int n) {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back("t" + std::to_string(i));
    return v;
}

// The face ring Z[Q] with its Sym(M)-module structure, graded pieces of the
// cohomology quotient, and normal forms.
class FaceRing {
  public:
    explicit FaceRing(CharacteristicPair pair)
        : pair_(std::move(pair)), xvars_(x_variables(pair_.d)), tvars_(t_variables(pair_.n)) {
        std::vector<Poly> relations; // SR generators vanish termwise under pruning
        for (const auto& nf : min_nonfaces(pair_)) {
            Exp e(static_cast<std::size_t>(pair_.d), 0);
            for (int i : nf) e[static_cast<std::size_t>(i)] = 1;
            relations.push_back(Poly::monomial(xvars_, e));
        }
        std::vector<Poly> linForms;
        for (int j = 0; j < pair_.n; ++j) {
            Poly l(xvars_);
            for (int i = 0; i < pair_.d; ++i) {
                Exp e(static_cast<std::size_t>(pair_.d), 0);
                e[static_cast<std::size_t>(i)] = 1;
                l.add_term(e, pair_.lambda.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
            }
            linForms.push_back(l);
        }
        CharacteristicPair* pp = &pair_;
        engine_ = std::make_unique<GradedQuotient>(
            xvars_, std::vector<int>(static_cast<std::size_t>(pair_.d), 2), relations, linForms,
            [pp](const Exp& e) {
                std::vector<int> support;
                for (std::size_t i = 0; i < e.size(); ++i)
                    if (e[i] != 0) support.push_back(static_cast<int>(i));
                return !pp->is_simplex(support);
            });
    }

    FaceRing(const FaceRing&) = delete;
    FaceRing& operator=(const FaceRing&) = delete;

    const CharacteristicPair& pair() const { return pair_; }
    const std::vector<std::string>& x_vars() const { return xvars_; }
    const std::vector<std::string>& t_vars() const { return tvars_; }
    const GradedQuotient& engine() const { return *engine_; }

    CohomPresentation presentation() const {
        CohomPresentation pres;
        pres.variables = xvars_;
        pres.srGenerators = min_nonfaces(pair_);
        pres.linearForms = engine_->lin_forms();
        return pres;
    }

    // Graded ranks and the monomial basis through maxDegree (default 2n).
    // Theorem-level checks: torsion-free, odd ranks zero, total rank = m.
    const GradedBasis& graded_basis(int maxDegree = -1) const {
        if (maxDegree < 0) maxDegree = 2 * pair_.n;
        if (maxDegree < 2 * pair_.n) throw Error("graded_basis: maxDegree must be at least 2n");
        if (cachedBasis_ && cachedBasis_->maxDegree >= maxDegree) return *cachedBasis_;
        GradedBasis gb;
        gb.maxDegree = maxDegree;
        gb.ranks.assign(static_cast<std::size_t>(maxDegree) + 1, 0);
        for (int deg = 0; deg <= maxDegree; deg += 2) {
            const auto& dd = engine_->degree(deg);
            gb.ranks[static_cast<std::size_t>(deg)] = dd.rank;
            if (dd.rank) gb.basis[deg] = dd.basis;
            gb.total += dd.rank;
        }
        const std::size_t m = vertices(pair_).size();
        if (gb.total != m)
            throw RankMismatch("total graded rank " + std::to_string(gb.total) +
                               " differs from vertex count " + std::to_string(m));
        // the ring is generated in degree 2, so rank 0 one step past the cap
        // certifies vanishing in every higher degree
        int probe = (maxDegree % 2 ? maxDegree + 1 : maxDegree) + 2;
        if (engine_->degree(probe).rank != 0)
            throw RankMismatch("graded rank does not vanish above degree " + std::to_string(maxDegree));
        cachedBasis_ = std::move(gb);
        return *cachedBasis_;
    }

    // normal form in H^*(X) over the graded basis
    std::map<Exp, Int> reduce(const Poly& p) const {
        graded_basis();
        return engine_->reduce(p);
    }

    // restriction to a fixed point: x_i -> dual basis vector (in M
    // coordinates) for i in a, x_i -> 0 otherwise
    Poly vertex_restrict(const Poly& p, const FaceId& a) const {
        IntMatrix U = dual_basis_at_vertex(pair_, a);
        std::vector<Poly> images(static_cast<std::size_t>(pair_.d), Poly(tvars_));
        for (std::size_t j = 0; j < a.facets.size(); ++j) {
            Poly u(tvars_);
            for (int k = 0; k < pair_.n; ++k) {
                Exp e(static_cast<std::size_t>(pair_.n), 0);
                e[static_cast<std::size_t>(k)] = 1;
                u.add_term(e, U.at(j, static_cast<std::size_t>(k)));
            }
            images[static_cast<std::size_t>(a.facets[j])] = u;
        }
        return substitute(p, images, tvars_);
    }

    std::map<Exp, Poly> sym_decompose(const Poly& p) const {
        return engine_->sym_decompose(p, graded_basis().flatten(), tvars_);
    }

    std::map<Exp, Poly> sym_decompose(const Poly& p, const std::vector<Exp>& basis) const {
        return engine_->sym_decompose(p, basis, tvars_);
    }

  private:
    CharacteristicPair pair_;
    std::vector<std::string> xvars_, tvars_;
    std::unique_ptr<GradedQuotient> engine_;
    mutable std::optional<GradedBasis> cachedBasis_;
};

} // namespace torman
