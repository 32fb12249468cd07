#pragma once

#include "torman/bundlerings.hpp"
#include "torman/charpair.hpp"
#include "torman/facering.hpp"
#include "torman/kfacering.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace torman {

using nlohmann::json;

enum class OutputFormat { text, json, latex };

inline OutputFormat format_from_string(const std::string& s) {
    if (s == "text") return OutputFormat::text;
    if (s == "json") return OutputFormat::json;
    if (s == "latex") return OutputFormat::latex;
    throw Error("unknown output format '" + s + "' (expected text|json|latex)");
}

// ---- polynomials ----------------------------------------------------------

inline json poly_to_json(const Poly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        json t;
        t["e"] = e;
        t["c"] = c.str();
        terms.push_back(t);
    }
    return json{{"vars", p.vars()}, {"terms", terms}};
}

inline Poly poly_from_json(const json& j) {
    Poly p(j.at("vars").get<std::vector<std::string>>());
    for (const auto& t : j.at("terms")) {
        Exp e = t.at("e").get<Exp>();
        Int c(t.at("c").get<std::string>());
        p.add_term(e, c);
    }
    return p;
}

// ---- element expression parser ---------------------------------------------
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ['^' exponent]
//   base   := integer | variable | '(' expr ')'
//   exponent := ['-'] digits | '(' ['-'] digits ')'

class ElementParser {
  public:
    ElementParser(std::string expr, std::vector<std::string> vars)
        : expr_(std::move(expr)), vars_(std::move(vars)) {}

    Poly parse() {
        Poly p = parse_expr();
        skip_ws();
        if (pos_ != expr_.size()) throw ParseError("unexpected trailing input", pos_);
        return p;
    }

  private:
    Poly parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = get() == '-';
        Poly p = parse_term();
        if (neg) p = -p;
        while (true) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            get();
            Poly q = parse_term();
            p = c == '+' ? p + q : p - q;
        }
        return p;
    }

    Poly parse_term() {
        Poly p = parse_factor();
        while (true) {
            skip_ws();
            if (peek() != '*') break;
            get();
            p *= parse_factor();
        }
        return p;
    }

    Poly parse_factor() {
        Poly base = parse_base();
        skip_ws();
        if (peek() != '^') return base;
        get();
        std::int64_t e = parse_exponent();
        if (e < 0 && !base.unit_inverse())
            throw ParseError("negative power of a non-invertible expression", pos_);
        return base.pow(e);
    }

    Poly parse_base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            Poly p = parse_expr();
            skip_ws();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            get();
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Poly::constant(vars_, parse_integer());
        // longest variable-name match
        std::size_t best = vars_.size();
        std::size_t bestLen = 0;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            const std::string& v = vars_[i];
            if (v.size() > bestLen && expr_.compare(pos_, v.size(), v) == 0) {
                best = i;
                bestLen = v.size();
            }
        }
        if (best == vars_.size()) throw ParseError("expected a number, variable, or '('", pos_);
        pos_ += bestLen;
        return Poly::variable(vars_, best);
    }

    std::int64_t parse_exponent() {
        skip_ws();
        bool paren = false;
        if (peek() == '(') {
            paren = true;
            get();
            skip_ws();
        }
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            get();
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected an integer exponent", pos_);
        Int v = parse_integer();
        if (paren) {
            skip_ws();
            if (peek() != ')') throw ParseError("expected an integer exponent", pos_);
            get();
        }
        Int r = neg ? -v : v;
        if (r > 1000 || r < -1000) throw ParseError("exponent out of range", pos_);
        return static_cast<std::int64_t>(r);
    }

    Int parse_integer() {
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
        if (digits.empty()) throw ParseError("expected digits", pos_);
        return Int(digits);
    }

    void skip_ws() {
        while (pos_ < expr_.size() && std::isspace(static_cast<unsigned char>(expr_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < expr_.size() ? expr_[pos_] : '\0'; }
    char get() { return expr_[pos_++]; }

    std::string expr_;
    std::vector<std::string> vars_;
    std::size_t pos_ = 0;
};

inline Poly parse_element(const std::string& expr, const std::vector<std::string>& vars) {
    return ElementParser(expr, vars).parse();
}

// ---- input schemas ----------------------------------------------------------

inline IntMatrix matrix_from_json(const json& j) {
    auto rows = j.get<std::vector<std::vector<long long>>>();
    std::vector<std::vector<Int>> r;
    for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
    return IntMatrix::from_rows(r);
}

inline json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

// { "n": int, "facets": [names]?, "nerve_maximal": [[1-based]], "lambda": [[int]] }
inline CharacteristicPair pair_from_json(const json& j) {
    CharacteristicPair p;
    p.n = j.at("n").get<int>();
    p.lambda = matrix_from_json(j.at("lambda"));
    p.d = static_cast<int>(p.lambda.rows());
    if (j.contains("facets"))
        p.facet_names = j.at("facets").get<std::vector<std::string>>();
    else
        for (int i = 1; i <= p.d; ++i) p.facet_names.push_back("Q" + std::to_string(i));
    for (const auto& s : j.at("nerve_maximal")) {
        std::vector<int> simplex;
        for (int i : s.get<std::vector<int>>()) {
            if (i < 1 || i > p.d) throw Error("nerve_maximal: facet index " + std::to_string(i) + " out of range");
            simplex.push_back(i - 1);
        }
        std::sort(simplex.begin(), simplex.end());
        p.nerve_max.push_back(simplex);
    }
    std::sort(p.nerve_max.begin(), p.nerve_max.end());
    p.nerve_max.erase(std::unique(p.nerve_max.begin(), p.nerve_max.end()), p.nerve_max.end());
    return p;
}

inline json pair_to_json(const CharacteristicPair& p) {
    json nerve = json::array();
    for (const auto& s : p.nerve_max) {
        json simplex = json::array();
        for (int i : s) simplex.push_back(i + 1);
        nerve.push_back(simplex);
    }
    json lambda = json::array();
    for (int i = 0; i < p.d; ++i) {
        json row = json::array();
        for (int c = 0; c < p.n; ++c)
            row.push_back(static_cast<long long>(p.lambda.at(static_cast<std::size_t>(i), static_cast<std::size_t>(c))));
        lambda.push_back(row);
    }
    return json{{"n", p.n}, {"facets", p.facet_names}, {"nerve_maximal", nerve}, {"lambda", lambda}};
}

// { "rays": [[int]], "max_cones": [[1-based]] }
inline Fan fan_from_json(const json& j) {
    Fan f;
    for (const auto& ray : j.at("rays")) {
        std::vector<Int> r;
        for (long long v : ray.get<std::vector<long long>>()) r.emplace_back(v);
        f.rays.push_back(r);
    }
    for (const auto& cone : j.at("max_cones")) {
        std::vector<int> c;
        for (int i : cone.get<std::vector<int>>()) {
            if (i < 1 || i > static_cast<int>(f.rays.size()))
                throw Error("max_cones: ray index " + std::to_string(i) + " out of range");
            c.push_back(i - 1);
        }
        f.maximalCones.push_back(c);
    }
    return f;
}

// { "n": int, "faces": [{"id", "codim", "facets": [facet ids]}],
//   "join": [[A, B, J]], "meet_components": [[A, B, [E...]]], "lambda": [[int]] }
inline GeneralFacePoset poset_from_json(const json& j) {
    GeneralFacePoset p;
    p.n = j.at("n").get<int>();
    std::map<std::string, int> byId;
    for (const auto& f : j.at("faces")) {
        PosetFace face;
        face.id = f.at("id").get<std::string>();
        face.codim = f.at("codim").get<int>();
        if (byId.count(face.id)) throw Error("poset: duplicate face id " + face.id);
        byId[face.id] = static_cast<int>(p.faces.size());
        p.faces.push_back(face);
    }
    // facets in declaration order carry the lambda rows
    for (std::size_t i = 0; i < p.faces.size(); ++i)
        if (p.faces[i].codim == 1) p.facets.push_back(static_cast<int>(i));
    auto face_index = [&](const std::string& id) {
        auto it = byId.find(id);
        if (it == byId.end()) throw Error("poset: unknown face id " + id);
        return it->second;
    };
    for (std::size_t k = 0; k < j.at("faces").size(); ++k) {
        const auto& f = j.at("faces")[k];
        if (!f.contains("facets")) continue;
        for (const auto& fid : f.at("facets")) {
            int faceIdx = face_index(fid.get<std::string>());
            auto pos = std::find(p.facets.begin(), p.facets.end(), faceIdx);
            if (pos == p.facets.end()) throw Error("poset: face lists a non-facet in 'facets'");
            p.faces[k].facet_indices.push_back(static_cast<int>(pos - p.facets.begin()));
        }
    }
    p.lambda = matrix_from_json(j.at("lambda"));
    for (const auto& e : j.at("join")) {
        int a = face_index(e.at(0).get<std::string>());
        int b = face_index(e.at(1).get<std::string>());
        p.joinTable[{std::min(a, b), std::max(a, b)}] = face_index(e.at(2).get<std::string>());
    }
    for (const auto& e : j.at("meet_components")) {
        int a = face_index(e.at(0).get<std::string>());
        int b = face_index(e.at(1).get<std::string>());
        std::vector<int> comps;
        for (const auto& cid : e.at(2)) comps.push_back(face_index(cid.get<std::string>()));
        p.meetComponents[{std::min(a, b), std::max(a, b)}] = comps;
    }
    return p;
}

inline BaseElem base_elem_from_json(const json& j, std::size_t rank) {
    BaseElem e;
    if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_string())
                e.emplace_back(v.get<std::string>());
            else
                e.emplace_back(v.get<long long>());
        }
    }
    if (e.size() != rank) throw Error("base ring element has wrong coefficient count");
    return e;
}

// { "basis": [{"name", "degree"}], "mult": [[[coeffs]]],
//   "char_class": {"u1": [coeffs], ...} }   (missing u_j means zero)
inline MultTable mult_table_from_json(const json& j) {
    std::vector<MultTable::BasisEntry> basis;
    for (const auto& b : j.at("basis"))
        basis.push_back({b.at("name").get<std::string>(), b.value("degree", 0)});
    const std::size_t r = basis.size();
    std::vector<std::vector<BaseElem>> table(r, std::vector<BaseElem>(r));
    const auto& mult = j.at("mult");
    if (mult.size() != r) throw Error("mult table must have rank rows");
    for (std::size_t i = 0; i < r; ++i) {
        if (mult[i].size() != r) throw Error("mult table must have rank columns");
        for (std::size_t k = 0; k < r; ++k) table[i][k] = base_elem_from_json(mult[i][k], r);
    }
    return MultTable(std::move(basis), std::move(table));
}

inline BaseCohomRing base_cohom_from_json(const json& j, int torusRank) {
    MultTable t = mult_table_from_json(j);
    std::vector<BaseElem> cc;
    for (int u = 1; u <= torusRank; ++u) {
        std::string key = "u" + std::to_string(u);
        if (j.contains("char_class") && j.at("char_class").contains(key))
            cc.push_back(base_elem_from_json(j.at("char_class").at(key), t.rank()));
        else
            cc.push_back(BaseElem(t.rank(), 0));
    }
    return BaseCohomRing(std::move(t), std::move(cc));
}

inline BaseKRing base_k_from_json(const json& j, int torusRank) {
    MultTable t = mult_table_from_json(j);
    std::vector<BaseElem> lc;
    for (int u = 1; u <= torusRank; ++u) {
        std::string key = "u" + std::to_string(u);
        if (j.contains("line_class") && j.at("line_class").contains(key))
            lc.push_back(base_elem_from_json(j.at("line_class").at(key), t.rank()));
        else {
            BaseElem e(t.rank(), 0);
            e[t.unit_index()] = 1;
            lc.push_back(e);
        }
    }
    return BaseKRing(std::move(t), std::move(lc));
}

// ---- restriction tuples ------------------------------------------------------

inline json tuple_to_json(const RestrictionTuple& t, const KFaceRing& k) {
    json entries = json::array();
    for (std::size_t a = 0; a < t.at.size(); ++a) {
        json e;
        json facets = json::array();
        for (int i : k.vertex_list()[a].facets) facets.push_back(i + 1);
        e["vertex"] = facets;
        e["poly"] = poly_to_json(t.at[a]);
        entries.push_back(e);
    }
    return json{{"tuple", entries}};
}

inline RestrictionTuple tuple_from_json(const json& j, const KFaceRing& k) {
    RestrictionTuple t;
    t.at.assign(k.vertex_list().size(), Poly({}));
    std::vector<bool> seen(t.at.size(), false);
    for (const auto& e : j.at("tuple")) {
        std::vector<int> facets;
        for (int i : e.at("vertex").get<std::vector<int>>()) facets.push_back(i - 1);
        std::sort(facets.begin(), facets.end());
        std::size_t idx = k.vertex_list().size();
        for (std::size_t a = 0; a < k.vertex_list().size(); ++a)
            if (k.vertex_list()[a].facets == facets) idx = a;
        if (idx == k.vertex_list().size()) throw Error("tuple entry names a non-vertex");
        t.at[idx] = poly_from_json(e.at("poly"));
        seen[idx] = true;
    }
    for (std::size_t a = 0; a < seen.size(); ++a)
        if (!seen[a]) throw Error("tuple is missing vertex " + k.vertex_list()[a].to_string());
    return t;
}

// ---- rendering ---------------------------------------------------------------

inline std::string poly_to_latex(const Poly& p) {
    if (p.is_zero()) return "0";
    std::vector<const std::pair<const Exp, Int>*> ts;
    for (const auto& t : p.terms()) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) { return graded_lex_less(b->first, a->first); });
    std::ostringstream os;
    bool first = true;
    for (auto* t : ts) {
        const Int& c = t->second;
        std::ostringstream mono;
        for (std::size_t i = 0; i < t->first.size(); ++i) {
            if (t->first[i] == 0) continue;
            std::string name = p.vars()[i];
            // x12 -> x_{12}, x_G stays
            std::string rendered = name;
            std::size_t split = 0;
            while (split < name.size() && !std::isdigit(static_cast<unsigned char>(name[split]))) ++split;
            if (split > 0 && split < name.size()) rendered = name.substr(0, split) + "_{" + name.substr(split) + "}";
            mono << rendered;
            if (t->first[i] != 1) mono << "^{" << t->first[i] << "}";
        }
        std::string m = mono.str();
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        Int a = abs(c);
        if (m.empty())
            os << a.str();
        else {
            if (a != 1) os << a.str() << " ";
            os << m;
        }
        first = false;
    }
    return os.str();
}

inline std::string base_poly_to_string(const BasePoly& bp, const MultTable& t) {
    if (bp.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : bp.terms) {
        std::ostringstream mono;
        bool firstv = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!firstv) mono << "*";
            mono << bp.vars[i];
            if (e[i] != 1) mono << "^" << e[i];
            firstv = false;
        }
        std::string coeff = t.render(c);
        if (!first) os << " + ";
        if (mono.str().empty())
            os << coeff;
        else if (coeff == "1")
            os << mono.str();
        else if (coeff.find(' ') != std::string::npos || coeff.find('*') != std::string::npos || coeff[0] == '-')
            os << "(" << coeff << ")*" << mono.str();
        else
            os << coeff << "*" << mono.str();
        first = false;
    }
    return os.str();
}

inline json base_poly_to_json(const BasePoly& bp) {
    json terms = json::array();
    for (const auto& [e, c] : bp.terms) {
        json coeff = json::array();
        for (const Int& x : c) coeff.push_back(x.str());
        terms.push_back(json{{"e", e}, {"c", coeff}});
    }
    return json{{"vars", bp.vars}, {"terms", terms}};
}

inline std::string render_bundle_presentation(const BundlePresentation& pres, const MultTable& table,
                                              OutputFormat fmt) {
    if (fmt == OutputFormat::json) {
        json j;
        j["conjectural"] = pres.conjectural;
        j["generators"] = json::array();
        for (std::size_t i = 0; i < pres.variables.size(); ++i)
            j["generators"].push_back(json{{"name", pres.variables[i]}, {"degree", pres.variableDegrees[i]}});
        j["relations_i"] = json::array();
        for (const Poly& g : pres.familyI) j["relations_i"].push_back(poly_to_json(g));
        j["relations_ii"] = json::array();
        for (const BasePoly& g : pres.familyII) j["relations_ii"].push_back(base_poly_to_json(g));
        j["notes"] = pres.notes;
        return j.dump(2);
    }
    std::ostringstream os;
    if (fmt == OutputFormat::text) {
        if (pres.conjectural) os << "CONJECTURAL presentation (no normal-form claims)\n";
        os << "generators:";
        for (std::size_t i = 0; i < pres.variables.size(); ++i)
            os << " " << pres.variables[i] << " (deg " << pres.variableDegrees[i] << ")";
        os << "\nrelations (i):\n";
        if (pres.familyI.empty()) os << "  (none)\n";
        for (const Poly& g : pres.familyI) os << "  " << g.to_string() << "\n";
        os << "relations (ii):\n";
        if (pres.familyII.empty()) os << "  (none)\n";
        for (const BasePoly& g : pres.familyII) os << "  " << base_poly_to_string(g, table) << "\n";
        for (const auto& n : pres.notes) os << "note: " << n << "\n";
    } else {
        os << "\\begin{align*}\n";
        for (const Poly& g : pres.familyI) os << "  &" << poly_to_latex(g) << "\\\\\n";
        for (const BasePoly& g : pres.familyII) {
            os << "  &" << base_poly_to_string(g, table) << "\\\\\n";
        }
        os << "\\end{align*}\n";
        for (const auto& n : pres.notes) os << "% " << n << "\n";
    }
    return os.str();
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

} // namespace torman
