#pragma once

#include "torman/charpair.hpp"
#include "torman/facering.hpp"
#include "torman/linsolve.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace torman {

// Presentation of K^*(X), either on polynomial generators x_i (mapped to
// 1 - [L_i]) or on Laurent generators y_i (mapped to [L_i]).
struct KPresentation {
    enum class Variant { x_form, y_form };
    Variant variant = Variant::y_form;
    std::vector<std::string> variables;
    std::vector<Poly> srGenerators;        // family (i)
    std::vector<Poly> characterRelations;  // family (ii), one per basis character
};

// One Laurent polynomial per vertex, each in that vertex's dual-character
// variables; entry order follows KFaceRing::vertex_list().
struct RestrictionTuple {
    std::vector<Poly> at;
};

inline std::vector<std::string> rt_variables(int n) {
    std::vector<std::string> v;
    for (int j = 1; j <= n; ++j) v.push_back("c" + std::to_string(j));
    return v;
}

// The K-theoretic face ring of a pair: restriction maps to the vertices,
// compatibility over joins, interpolation back to Laurent polynomials, and
// the RT-module structure.
class KFaceRing {
  public:
    explicit KFaceRing(CharacteristicPair pair)
        : face_(std::move(pair)), yvars_(y_variables(face_.pair().d)),
          cvars_(rt_variables(face_.pair().n)), vertices_(vertices(face_.pair())) {
        for (const FaceId& a : vertices_) duals_.push_back(dual_basis_at_vertex(face_.pair(), a));
    }

    const CharacteristicPair& pair() const { return face_.pair(); }
    const FaceRing& face_ring() const { return face_; }
    const std::vector<std::string>& y_vars() const { return yvars_; }
    const std::vector<std::string>& rt_vars() const { return cvars_; }
    const std::vector<FaceId>& vertex_list() const { return vertices_; }

    // variables of RT_a (or of RT_F for any face F): one per facet of the face
    static std::vector<std::string> face_vars(const FaceId& f) {
        std::vector<std::string> v;
        for (int i : f.facets) v.push_back("u" + std::to_string(i + 1));
        return v;
    }

    KPresentation presentation(KPresentation::Variant variant) const {
        const CharacteristicPair& p = face_.pair();
        KPresentation pres;
        pres.variant = variant;
        const bool yform = variant == KPresentation::Variant::y_form;
        pres.variables = yform ? yvars_ : x_variables(p.d);
        const auto& vars = pres.variables;
        for (const auto& nf : min_nonfaces(p)) {
            Poly g = Poly::constant(vars, 1);
            for (int i : nf) {
                if (yform)
                    g *= Poly::constant(vars, 1) - Poly::variable(vars, static_cast<std::size_t>(i));
                else
                    g *= Poly::variable(vars, static_cast<std::size_t>(i));
            }
            pres.srGenerators.push_back(g);
        }
        for (int j = 0; j < p.n; ++j) {
            if (yform) {
                Exp e(static_cast<std::size_t>(p.d), 0);
                for (int i = 0; i < p.d; ++i)
                    e[static_cast<std::size_t>(i)] =
                        static_cast<std::int64_t>(p.lambda.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
                pres.characterRelations.push_back(Poly::monomial(vars, e) - Poly::constant(vars, 1));
            } else {
                Poly pos = Poly::constant(vars, 1), neg = Poly::constant(vars, 1);
                for (int i = 0; i < p.d; ++i) {
                    Int pairing = p.lambda.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                    if (pairing == 0) continue;
                    Poly f = Poly::constant(vars, 1) - Poly::variable(vars, static_cast<std::size_t>(i));
                    if (pairing > 0)
                        pos *= f.pow(static_cast<std::int64_t>(pairing));
                    else
                        neg *= f.pow(static_cast<std::int64_t>(-pairing));
                }
                pres.characterRelations.push_back(pos - neg);
            }
        }
        return pres;
    }

    // phi at one vertex: y_i -> chi^{u_i} for i in a, y_i -> 1 otherwise
    Poly phi_restrict(const Poly& p, std::size_t vertexIdx) const {
        const FaceId& a = vertices_[vertexIdx];
        std::vector<std::string> target = face_vars(a);
        std::vector<Exp> images(yvars_.size(), Exp(target.size(), 0));
        for (std::size_t j = 0; j < a.facets.size(); ++j) {
            Exp e(target.size(), 0);
            e[j] = 1;
            images[static_cast<std::size_t>(a.facets[j])] = e;
        }
        return substitute_monomial(p, images, target);
    }

    RestrictionTuple phi(const Poly& p) const {
        RestrictionTuple t;
        for (std::size_t k = 0; k < vertices_.size(); ++k) t.at.push_back(phi_restrict(p, k));
        return t;
    }

    // projection RT_a -> RT_{a v b}: join variables pass through, the rest
    // augment to 1
    Poly restrict_to_face(const Poly& pa, const FaceId& a, const FaceId& target) const {
        std::vector<std::string> tv = face_vars(target);
        std::vector<Exp> images(a.facets.size(), Exp(tv.size(), 0));
        for (std::size_t j = 0; j < a.facets.size(); ++j) {
            auto pos = std::find(target.facets.begin(), target.facets.end(), a.facets[j]);
            if (pos != target.facets.end()) {
                Exp e(tv.size(), 0);
                e[static_cast<std::size_t>(pos - target.facets.begin())] = 1;
                images[j] = e;
            }
        }
        return substitute_monomial(pa, images, tv);
    }

    struct CompatResult {
        bool ok = true;
        std::size_t a = 0, b = 0; // witness pair when !ok
        Poly restrictionA, restrictionB;
    };

    CompatResult check_compatibility(const RestrictionTuple& t) const {
        if (t.at.size() != vertices_.size())
            throw Error("check_compatibility: tuple must have one entry per vertex");
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (t.at[i].vars() != face_vars(vertices_[i]))
                throw Error("check_compatibility: entry " + std::to_string(i) +
                            " is not over the vertex's dual-character variables");
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
                FaceId f = join(vertices_[i], vertices_[j]);
                Poly ri = restrict_to_face(t.at[i], vertices_[i], f);
                Poly rj = restrict_to_face(t.at[j], vertices_[j], f);
                if (ri != rj) return {false, i, j, ri, rj};
            }
        return {};
    }

    // Vertex sweep: match the tuple at one vertex at a time by lifting the
    // residual there to a Laurent polynomial in the vertex's y-variables;
    // earlier vertices stay matched.
    Poly interpolate(const RestrictionTuple& t) const {
        CompatResult c = check_compatibility(t);
        if (!c.ok)
            throw IncompatibleTuple("tuple restrictions disagree at vertices " +
                                    vertices_[c.a].to_string() + " and " + vertices_[c.b].to_string());
        RestrictionTuple residual = t;
        Poly result(yvars_);
        for (std::size_t k = 0; k < vertices_.size(); ++k) {
            const FaceId& a = vertices_[k];
            // lift chi^{u_{i_j}} -> y_{i_j}
            std::vector<Exp> images(a.facets.size());
            for (std::size_t j = 0; j < a.facets.size(); ++j) {
                Exp e(yvars_.size(), 0);
                e[static_cast<std::size_t>(a.facets[j])] = 1;
                images[j] = e;
            }
            Poly lift = substitute_monomial(residual.at[k], images, yvars_);
            result += lift;
            for (std::size_t l = 0; l < vertices_.size(); ++l)
                residual.at[l] -= phi_restrict(lift, l);
            for (std::size_t l = 0; l <= k; ++l)
                if (!residual.at[l].is_zero())
                    throw IncompatibleTuple("interpolation sweep failed to keep vertex " +
                                            vertices_[l].to_string() + " matched");
        }
        return result;
    }

    // RT -> K(Q): chi^u -> prod y_i^{<u, v_i>}
    Poly iota(const Poly& rt) const {
        const CharacteristicPair& p = face_.pair();
        std::vector<Exp> images(cvars_.size());
        for (int j = 0; j < p.n; ++j) {
            Exp e(yvars_.size());
            for (int i = 0; i < p.d; ++i)
                e[static_cast<std::size_t>(i)] =
                    static_cast<std::int64_t>(p.lambda.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
            images[static_cast<std::size_t>(j)] = e;
        }
        return substitute_monomial(rt, images, yvars_);
    }

    // RT -> RT_a: chi^u -> prod_j chi^{<u, v_{i_j}> u_{i_j}}
    Poly zeta(const Poly& rt, std::size_t vertexIdx) const {
        const CharacteristicPair& p = face_.pair();
        const FaceId& a = vertices_[vertexIdx];
        std::vector<std::string> target = face_vars(a);
        std::vector<Exp> images(cvars_.size());
        for (int j = 0; j < p.n; ++j) {
            Exp e(target.size());
            for (std::size_t k = 0; k < a.facets.size(); ++k)
                e[k] = static_cast<std::int64_t>(
                    p.lambda.at(static_cast<std::size_t>(a.facets[k]), static_cast<std::size_t>(j)));
            images[static_cast<std::size_t>(j)] = e;
        }
        return substitute_monomial(rt, images, target);
    }

    // inverse of zeta at a vertex: chi^{u_{i_k}} -> its character in M
    Poly zeta_inv(const Poly& pa, std::size_t vertexIdx) const {
        const FaceId& a = vertices_[vertexIdx];
        std::vector<Exp> images(a.facets.size());
        for (std::size_t k = 0; k < a.facets.size(); ++k) {
            Exp e(cvars_.size());
            for (std::size_t j = 0; j < cvars_.size(); ++j)
                e[j] = static_cast<std::int64_t>(duals_[vertexIdx].at(k, j));
            images[k] = e;
        }
        return substitute_monomial(pa, images, cvars_);
    }

    // cohomology basis monomials transplanted through x_i -> 1 - y_i
    std::vector<Poly> transplanted_basis() const {
        std::vector<Poly> out;
        for (const Exp& b : face_.graded_basis().flatten()) {
            Poly m = Poly::constant(yvars_, 1);
            for (std::size_t i = 0; i < b.size(); ++i) {
                Poly f = Poly::constant(yvars_, 1) - Poly::variable(yvars_, i);
                for (std::int64_t k = 0; k < b[i]; ++k) m *= f;
            }
            out.push_back(m);
        }
        return out;
    }

    // square-free face monomials by increasing degree (fallback basis pool)
    std::vector<Poly> squarefree_face_monomials() const {
        const CharacteristicPair& p = face_.pair();
        std::vector<std::vector<int>> simplices;
        std::function<void(int, std::vector<int>&)> rec = [&](int start, std::vector<int>& cur) {
            simplices.push_back(cur);
            for (int i = start; i < p.d; ++i) {
                cur.push_back(i);
                if (p.is_simplex(cur)) rec(i + 1, cur);
                cur.pop_back();
            }
        };
        std::vector<int> cur;
        rec(0, cur);
        std::sort(simplices.begin(), simplices.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        std::vector<Poly> out;
        for (const auto& s : simplices) {
            Exp e(yvars_.size(), 0);
            for (int i : s) e[static_cast<std::size_t>(i)] = 1;
            out.push_back(Poly::monomial(yvars_, e));
        }
        return out;
    }

    // the vertex-by-vertex matrix of a candidate basis, pulled back to RT
    std::vector<std::vector<Poly>> basis_matrix(const std::vector<Poly>& basis) const {
        std::vector<std::vector<Poly>> B(vertices_.size(), std::vector<Poly>(basis.size(), Poly(cvars_)));
        for (std::size_t a = 0; a < vertices_.size(); ++a)
            for (std::size_t k = 0; k < basis.size(); ++k)
                B[a][k] = zeta_inv(phi_restrict(basis[k], a), a);
        return B;
    }

    struct RTDecomposition {
        std::vector<Poly> basis;  // over the y variables
        std::vector<Poly> coeffs; // RT elements, one per basis entry
    };

    RTDecomposition rt_decompose(const Poly& p, const std::vector<Poly>& basis) const {
        if (basis.size() != vertices_.size())
            throw BasisNotFree("rt_decompose: need exactly chi(X) basis elements");
        std::vector<std::vector<Poly>> B = basis_matrix(basis);
        std::vector<Poly> rhs;
        for (std::size_t a = 0; a < vertices_.size(); ++a)
            rhs.push_back(zeta_inv(phi_restrict(p, a), a));
        LaurentSolveResult sol = solve_over_laurent_fraction_field(B, rhs);
        if (sol.status == LaurentSolveResult::Status::singular)
            throw BasisNotFree("rt_decompose: candidate basis matrix is singular");
        if (sol.status == LaurentSolveResult::Status::not_in_ring)
            throw BasisNotFree("rt_decompose: solution requires denominators");
        // reconstruction: sum_k iota(c_k) * b_k restricts to phi(p) exactly
        Poly recon(yvars_);
        for (std::size_t k = 0; k < basis.size(); ++k) recon += iota(sol.solution[k]) * basis[k];
        for (std::size_t a = 0; a < vertices_.size(); ++a)
            if (phi_restrict(recon, a) != phi_restrict(p, a))
                throw BasisNotFree("rt_decompose: reconstruction mismatch");
        return {basis, sol.solution};
    }

    // default basis: the transplanted cohomology basis, falling back to a
    // search through square-free face monomials
    const std::vector<Poly>& default_basis() const {
        if (defaultBasis_) return *defaultBasis_;
        std::vector<Poly> cand = transplanted_basis();
        try {
            Poly d = laurent_det(basis_matrix(cand));
            if (d.is_zero()) throw BasisNotFree("transplanted basis is singular");
            defaultBasis_ = std::move(cand);
            return *defaultBasis_;
        } catch (const BasisNotFree&) {
        }
        defaultBasis_ = search_basis();
        return *defaultBasis_;
    }

    // augmentation chi^u -> 1 applied to each coefficient: the class in
    // K^*(X) as an integer combination of the basis
    std::vector<Int> augment(const RTDecomposition& dec) const {
        std::vector<Int> out;
        for (const Poly& c : dec.coeffs) {
            Int s = 0;
            for (const auto& [e, coesf] : c.terms()) s += coesf;
            out.push_back(s);
        }
        return out;
    }

    std::vector<Int> reduce_to_KX(const Poly& p) const { return augment(rt_decompose(p, default_basis())); }

    // class of p in K(Q) is zero iff all RT coefficients vanish
    bool class_is_zero(const Poly& p) const {
        for (const Poly& c : rt_decompose(p, default_basis()).coeffs)
            if (!c.is_zero()) return false;
        return true;
    }

  private:
    std::vector<Poly> search_basis() const {
        std::vector<Poly> pool = squarefree_face_monomials();
        std::vector<Poly> chosen;
        const std::size_t m = vertices_.size();
        for (const Poly& cand : pool) {
            if (chosen.size() == m) break;
            std::vector<Poly> trial = chosen;
            trial.push_back(cand);
            // columns pulled back to RT at each vertex; rank over the
            // fraction field must grow
            std::vector<std::vector<Poly>> cols = basis_matrix(trial);
            if (fraction_rank(cols) == trial.size()) chosen = std::move(trial);
        }
        if (chosen.size() != m)
            throw BasisNotFree("no square-free monomial basis spans the restriction image");
        return chosen;
    }

    // rank of an m x k Laurent matrix over the fraction field
    static std::size_t fraction_rank(std::vector<std::vector<Poly>> a) {
        if (a.empty()) return 0;
        const std::size_t rows = a.size(), cols = a[0].size();
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols && rank < rows; ++c) {
            std::size_t piv = rank;
            while (piv < rows && a[piv][c].is_zero()) ++piv;
            if (piv == rows) continue;
            std::swap(a[rank], a[piv]);
            for (std::size_t r = rank + 1; r < rows; ++r) {
                if (a[r][c].is_zero()) continue;
                Poly f1 = a[rank][c], f2 = a[r][c];
                for (std::size_t k = 0; k < cols; ++k) a[r][k] = f1 * a[r][k] - f2 * a[rank][k];
            }
            ++rank;
        }
        return rank;
    }

    FaceRing face_;
    std::vector<std::string> yvars_, cvars_;
    std::vector<FaceId> vertices_;
    std::vector<IntMatrix> duals_;
    mutable std::optional<std::vector<Poly>> defaultBasis_;
};

} // namespace torman
