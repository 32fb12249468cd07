#pragma once

#include "torman/error.hpp"
#include "torman/int_matrix.hpp"
#include "torman/integer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace torman {

// A face of the homology-polytope model: the sorted set of facets containing
// it (0-based). The empty set is the whole orbit space Q.
struct FaceId {
    std::vector<int> facets;

    bool is_Q() const { return facets.empty(); }
    std::size_t codim() const { return facets.size(); }

    bool operator==(const FaceId& o) const { return facets == o.facets; }
    bool operator<(const FaceId& o) const { return facets < o.facets; }

    std::string to_string() const {
        if (facets.empty()) return "Q";
        std::ostringstream os;
        os << "{";
        for (std::size_t i = 0; i < facets.size(); ++i) {
            if (i) os << ",";
            os << facets[i] + 1;
        }
        os << "}";
        return os.str();
    }
};

// Combinatorial characteristic pair: nerve of the facet cover plus the d x n
// matrix whose row i is the primitive circle direction attached to facet i.
struct CharacteristicPair {
    int n = 0; // torus rank
    int d = 0; // facet count
    std::vector<std::string> facet_names;
    std::vector<std::vector<int>> nerve_max; // maximal simplices, 0-based sorted
    IntMatrix lambda;                        // d x n

    bool is_simplex(const std::vector<int>& s) const {
        if (s.empty()) return true;
        for (const auto& m : nerve_max)
            if (std::includes(m.begin(), m.end(), s.begin(), s.end())) return true;
        return false;
    }

    std::vector<Int> v(int facet) const { return lambda.row(static_cast<std::size_t>(facet)); }
};

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> problems;
    // vertices whose facet directions fail to be a lattice basis, with dets
    std::vector<std::pair<FaceId, Int>> bad_vertices;
    int vertex_count = 0;

    void fail(const std::string& msg) {
        valid = false;
        problems.push_back(msg);
    }
};

inline std::vector<FaceId> vertices(const CharacteristicPair& pair) {
    std::set<std::vector<int>> vs;
    for (const auto& m : pair.nerve_max)
        if (static_cast<int>(m.size()) == pair.n) vs.insert(m);
    std::vector<FaceId> out;
    for (const auto& s : vs) out.push_back(FaceId{s});
    return out;
}

// Submatrix of lambda at the facets of a face, rows in facet order.
inline IntMatrix lambda_at(const CharacteristicPair& pair, const FaceId& f) {
    IntMatrix m(f.facets.size(), static_cast<std::size_t>(pair.n));
    for (std::size_t r = 0; r < f.facets.size(); ++r)
        for (int c = 0; c < pair.n; ++c) m.set(r, static_cast<std::size_t>(c), pair.lambda.at(static_cast<std::size_t>(f.facets[r]), static_cast<std::size_t>(c)));
    return m;
}

inline ValidationReport validate(const CharacteristicPair& pair) {
    ValidationReport rep;
    if (pair.n < 1) rep.fail("torus rank n must be >= 1");
    if (pair.d < 1) rep.fail("facet count d must be >= 1");
    if (pair.lambda.rows() != static_cast<std::size_t>(pair.d) ||
        pair.lambda.cols() != static_cast<std::size_t>(pair.n))
        rep.fail("lambda must be a d x n matrix");
    if (!rep.valid) return rep;

    std::vector<bool> seen(static_cast<std::size_t>(pair.d), false);
    for (const auto& m : pair.nerve_max) {
        if (static_cast<int>(m.size()) > pair.n)
            rep.fail("maximal simplex " + FaceId{m}.to_string() + " has more than n elements");
        for (int i : m) {
            if (i < 0 || i >= pair.d) { rep.fail("facet index out of range in nerve"); continue; }
            seen[static_cast<std::size_t>(i)] = true;
        }
    }
    for (int i = 0; i < pair.d; ++i)
        if (!seen[static_cast<std::size_t>(i)])
            rep.fail("facet " + std::to_string(i + 1) + " appears in no simplex");

    for (int i = 0; i < pair.d; ++i) {
        std::vector<Int> vi = pair.v(i);
        if (gcd_vec(vi) != 1)
            rep.fail("lambda row " + std::to_string(i + 1) + " is not primitive");
    }

    std::vector<FaceId> vs = vertices(pair);
    rep.vertex_count = static_cast<int>(vs.size());
    if (vs.empty()) rep.fail("the nerve has no n-element simplex (no vertices)");
    for (const FaceId& a : vs) {
        Int dt = det(lambda_at(pair, a));
        if (dt != 1 && dt != -1) {
            rep.fail("facet directions at vertex " + a.to_string() + " have determinant " + dt.str());
            rep.bad_vertices.emplace_back(a, dt);
        }
    }
    return rep;
}

// Minimal face containing both a and b. In the homology-polytope model this
// is the set intersection of the facet sets; the empty set means Q.
inline FaceId join(const FaceId& a, const FaceId& b) {
    FaceId r;
    std::set_intersection(a.facets.begin(), a.facets.end(), b.facets.begin(), b.facets.end(),
                          std::back_inserter(r.facets));
    return r;
}

// Rows are the dual basis u_{i_1},...,u_{i_n} of the facet directions at a
// vertex: U * lambda_a^T = I.
inline IntMatrix dual_basis_at_vertex(const CharacteristicPair& pair, const FaceId& a) {
    if (static_cast<int>(a.facets.size()) != pair.n)
        throw Error("dual_basis_at_vertex: face " + a.to_string() + " is not a vertex");
    IntMatrix la = lambda_at(pair, a);
    Int dt = det(la);
    if (dt != 1 && dt != -1)
        throw NonUnimodularVertex("vertex " + a.to_string() + " has determinant " + dt.str());
    return inverse_unimodular(la.transpose());
}

inline int euler_characteristic(const CharacteristicPair& pair) {
    return static_cast<int>(vertices(pair).size());
}

// Smooth complete fan, combinatorial data only.
struct Fan {
    std::vector<std::vector<Int>> rays;    // primitive vectors in Z^n
    std::vector<std::vector<int>> maximalCones; // 0-based ray index sets of size n
};

inline CharacteristicPair from_fan(const Fan& fan) {
    if (fan.rays.empty()) throw NonSmoothCone("fan has no rays");
    const int n = static_cast<int>(fan.rays[0].size());
    const int d = static_cast<int>(fan.rays.size());
    for (const auto& r : fan.rays) {
        if (static_cast<int>(r.size()) != n) throw NonSmoothCone("ray dimension mismatch");
        if (gcd_vec(r) != 1) throw NonSmoothCone("ray is not primitive");
    }
    CharacteristicPair pair;
    pair.n = n;
    pair.d = d;
    pair.lambda = IntMatrix(static_cast<std::size_t>(d), static_cast<std::size_t>(n));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) pair.lambda.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), fan.rays[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    for (int i = 0; i < d; ++i) pair.facet_names.push_back("rho" + std::to_string(i + 1));

    for (const auto& cone : fan.maximalCones) {
        if (static_cast<int>(cone.size()) != n)
            throw NonSmoothCone("maximal cone is not full-dimensional");
        std::vector<int> s = cone;
        std::sort(s.begin(), s.end());
        for (int i : s)
            if (i < 0 || i >= d) throw NonSmoothCone("cone ray index out of range");
        IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c), fan.rays[static_cast<std::size_t>(s[static_cast<std::size_t>(r)])][static_cast<std::size_t>(c)]);
        Int dt = det(m);
        if (dt != 1 && dt != -1)
            throw NonSmoothCone("cone " + FaceId{s}.to_string() + " has determinant " + dt.str());
        pair.nerve_max.push_back(s);
    }
    std::sort(pair.nerve_max.begin(), pair.nerve_max.end());
    pair.nerve_max.erase(std::unique(pair.nerve_max.begin(), pair.nerve_max.end()), pair.nerve_max.end());

    // completeness witness: every wall of a maximal cone is shared by exactly
    // two maximal cones
    std::map<std::vector<int>, int> walls;
    for (const auto& cone : pair.nerve_max)
        for (std::size_t k = 0; k < cone.size(); ++k) {
            std::vector<int> w = cone;
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(k));
            walls[w] += 1;
        }
    for (const auto& [w, cnt] : walls)
        if (cnt != 2)
            throw RidgePairingFailure("wall " + FaceId{w}.to_string() + " lies in " + std::to_string(cnt) +
                                      " maximal cones (expected 2)");
    return pair;
}

// General face poset for the face-acyclic regime: faces need not be
// determined by their facet sets, so join and meet tables come with the data.
struct PosetFace {
    std::string id;
    int codim = 0;
    std::vector<int> facet_indices; // indices into GeneralFacePoset::facets
};

struct GeneralFacePoset {
    int n = 0;                        // torus rank
    std::vector<PosetFace> faces;     // includes Q (codim 0)
    std::vector<int> facets;          // face indices of the codim-1 faces, lambda row order
    IntMatrix lambda;                 // #facets x n
    std::map<std::pair<int, int>, int> joinTable;                 // unordered face-index pair -> face index
    std::map<std::pair<int, int>, std::vector<int>> meetComponents;

    int q_index() const {
        for (std::size_t i = 0; i < faces.size(); ++i)
            if (faces[i].codim == 0) return static_cast<int>(i);
        return -1;
    }

    int join_of(int a, int b) const {
        if (a == b) return a;
        int q = q_index();
        if (a == q || b == q) return q;
        std::pair<int, int> key{std::min(a, b), std::max(a, b)};
        auto it = joinTable.find(key);
        if (it == joinTable.end())
            throw Error("poset join table has no entry for (" + faces[static_cast<std::size_t>(a)].id + "," + faces[static_cast<std::size_t>(b)].id + ")");
        return it->second;
    }

    const std::vector<int>& meet_of(int a, int b) const {
        static const std::vector<int> empty;
        std::pair<int, int> key{std::min(a, b), std::max(a, b)};
        auto it = meetComponents.find(key);
        if (it == meetComponents.end())
            throw Error("poset meet table has no entry for (" + faces[static_cast<std::size_t>(a)].id + "," + faces[static_cast<std::size_t>(b)].id + ")");
        return it->second;
    }

    // containment derived from the join table: E <= F iff E v F = F
    bool contained_in(int e, int f) const {
        if (e == f) return true;
        return join_of(e, f) == f;
    }

    std::vector<int> vertex_faces() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < faces.size(); ++i)
            if (faces[i].codim == n) out.push_back(static_cast<int>(i));
        return out;
    }
};

inline ValidationReport validate_poset(const GeneralFacePoset& p) {
    ValidationReport rep;
    if (p.q_index() < 0) rep.fail("poset has no codimension-0 face Q");
    if (p.lambda.rows() != p.facets.size() || p.lambda.cols() != static_cast<std::size_t>(p.n))
        rep.fail("lambda must be (#facets) x n");
    for (int f : p.facets)
        if (p.faces[static_cast<std::size_t>(f)].codim != 1) rep.fail("facet list contains a face of codim != 1");
    if (!rep.valid) return rep;

    const int q = p.q_index();
    const int nf = static_cast<int>(p.faces.size());
    for (int a = 0; a < nf; ++a)
        for (int b = a + 1; b < nf; ++b) {
            if (a == q || b == q) continue;
            int j;
            try {
                j = p.join_of(a, b);
            } catch (const Error& e) {
                rep.fail(e.what());
                continue;
            }
            if (!p.contained_in(a, j) || !p.contained_in(b, j))
                rep.fail("join of " + p.faces[static_cast<std::size_t>(a)].id + "," + p.faces[static_cast<std::size_t>(b)].id + " does not contain both");
            const std::vector<int>* meet = nullptr;
            try {
                meet = &p.meet_of(a, b);
            } catch (const Error& e) {
                rep.fail(e.what());
                continue;
            }
            for (int e : *meet) {
                if (!p.contained_in(e, a) || !p.contained_in(e, b))
                    rep.fail("meet component " + p.faces[static_cast<std::size_t>(e)].id + " is not below both " +
                             p.faces[static_cast<std::size_t>(a)].id + " and " + p.faces[static_cast<std::size_t>(b)].id);
                int expect = p.faces[static_cast<std::size_t>(a)].codim + p.faces[static_cast<std::size_t>(b)].codim - p.faces[static_cast<std::size_t>(j)].codim;
                if (p.faces[static_cast<std::size_t>(e)].codim != expect)
                    rep.fail("meet component " + p.faces[static_cast<std::size_t>(e)].id + " has codim " +
                             std::to_string(p.faces[static_cast<std::size_t>(e)].codim) + ", expected " + std::to_string(expect));
            }
        }

    for (std::size_t i = 0; i < p.facets.size(); ++i)
        if (gcd_vec(p.lambda.row(i)) != 1)
            rep.fail("lambda row " + std::to_string(i + 1) + " is not primitive");

    rep.vertex_count = static_cast<int>(p.vertex_faces().size());
    if (rep.vertex_count == 0) rep.fail("poset has no codim-n face (no vertices)");
    return rep;
}

// View a homology-polytope pair as a general face poset (faces = simplices of
// the nerve; meets are single components given by facet-set unions).
inline GeneralFacePoset poset_from_pair(const CharacteristicPair& pair) {
    GeneralFacePoset p;
    p.n = pair.n;
    // enumerate all simplices of the nerve
    std::set<std::vector<int>> simplices;
    simplices.insert(std::vector<int>{});
    for (const auto& m : pair.nerve_max) {
        const std::size_t k = m.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
            std::vector<int> s;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::size_t(1) << i)) s.push_back(m[i]);
            simplices.insert(s);
        }
    }
    std::map<std::vector<int>, int> index;
    for (const auto& s : simplices) {
        PosetFace f;
        f.id = FaceId{s}.to_string();
        f.codim = static_cast<int>(s.size());
        index[s] = static_cast<int>(p.faces.size());
        p.faces.push_back(f);
    }
    for (int i = 0; i < pair.d; ++i) p.facets.push_back(index.at({i}));
    // facet positions agree with the pair's facet numbering
    for (const auto& [s, idx] : index) p.faces[static_cast<std::size_t>(idx)].facet_indices = s;
    p.lambda = pair.lambda;

    const std::vector<std::vector<int>> all(simplices.begin(), simplices.end());
    for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = a + 1; b < all.size(); ++b) {
            std::vector<int> j, u;
            std::set_intersection(all[a].begin(), all[a].end(), all[b].begin(), all[b].end(), std::back_inserter(j));
            std::set_union(all[a].begin(), all[a].end(), all[b].begin(), all[b].end(), std::back_inserter(u));
            int ia = index.at(all[a]), ib = index.at(all[b]);
            std::pair<int, int> key{std::min(ia, ib), std::max(ia, ib)};
            p.joinTable[key] = index.at(j);
            if (pair.is_simplex(u))
                p.meetComponents[key] = {index.at(u)};
            else
                p.meetComponents[key] = {};
        }
    return p;
}

} // namespace torman
