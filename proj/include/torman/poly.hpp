#pragma once

#include "torman/error.hpp"
#include "torman/integer.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace torman {

// Exponent vector; one entry per variable, negative entries allowed.
using Exp = std::vector<std::int64_t>;

inline Exp exp_add(const Exp& a, const Exp& b) {
    Exp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Exp exp_sub(const Exp& a, const Exp& b) {
    Exp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline std::int64_t exp_total(const Exp& a) {
    std::int64_t t = 0;
    for (auto e : a) t += e;
    return t;
}

// Graded-lex comparison: total degree first, then lexicographic.
inline bool graded_lex_less(const Exp& a, const Exp& b) {
    std::int64_t ta = exp_total(a), tb = exp_total(b);
    if (ta != tb) return ta < tb;
    return a < b;
}

// Sparse multivariate Laurent polynomial over Z. Terms are kept in a map
// with lexicographic key order; zero coefficients are never stored.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Poly constant(const std::vector<std::string>& vars, const Int& c) {
        Poly p(vars);
        if (c != 0) p.terms_[Exp(vars.size(), 0)] = c;
        return p;
    }

    static Poly monomial(const std::vector<std::string>& vars, const Exp& e, const Int& c = 1) {
        if (e.size() != vars.size()) throw Error("Poly::monomial: exponent length mismatch");
        Poly p(vars);
        if (c != 0) p.terms_[e] = c;
        return p;
    }

    static Poly variable(const std::vector<std::string>& vars, std::size_t idx, std::int64_t power = 1) {
        Exp e(vars.size(), 0);
        e[idx] = power;
        return monomial(vars, e);
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exp, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        return exp_is_zero(terms_.begin()->first);
    }

    Int constant_value() const {
        if (terms_.empty()) return 0;
        auto it = terms_.find(Exp(vars_.size(), 0));
        return it == terms_.end() ? Int(0) : it->second;
    }

    // true when every exponent is nonnegative (an ordinary polynomial)
    bool is_ordinary() const {
        for (const auto& [e, c] : terms_)
            for (auto x : e)
                if (x < 0) return false;
        return true;
    }

    Int coeff(const Exp& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Int(0) : it->second;
    }

    void add_term(const Exp& e, const Int& c) {
        if (e.size() != vars_.size()) throw Error("Poly::add_term: exponent length mismatch");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r(vars_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    Poly operator+(const Poly& o) const {
        check_vars(o);
        Poly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    Poly operator-(const Poly& o) const {
        check_vars(o);
        Poly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }

    Poly operator*(const Poly& o) const {
        check_vars(o);
        Poly r(vars_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) r.add_term(exp_add(e1, e2), c1 * c2);
        return r;
    }

    Poly operator*(const Int& c) const {
        Poly r(vars_);
        if (c == 0) return r;
        for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
        return r;
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    bool operator==(const Poly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(std::int64_t k) const {
        if (k < 0) {
            std::optional<Poly> inv = unit_inverse();
            if (!inv) throw NonInvertibleImage("pow: negative power of a non-unit");
            return inv->pow(-k);
        }
        Poly r = constant(vars_, 1);
        Poly base = *this;
        while (k > 0) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    // Inverse when the polynomial is a unit of the Laurent ring over Z,
    // i.e. a single term with coefficient +-1.
    std::optional<Poly> unit_inverse() const {
        if (terms_.size() != 1) return std::nullopt;
        const auto& [e, c] = *terms_.begin();
        if (c != 1 && c != -1) return std::nullopt;
        Exp inv(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
        return monomial(vars_, inv, c);
    }

    // Leading term under graded-lex (largest); polynomial must be nonzero.
    std::pair<Exp, Int> leading_term() const {
        if (terms_.empty()) throw Error("leading_term of zero polynomial");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (graded_lex_less(best->first, it->first)) best = it;
        return {best->first, best->second};
    }

    // Componentwise minimum of all exponent vectors (zero poly -> zeros).
    Exp min_exponents() const {
        Exp m(vars_.size(), 0);
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (first) { m = e; first = false; continue; }
            for (std::size_t i = 0; i < e.size(); ++i) m[i] = std::min(m[i], e[i]);
        }
        return m;
    }

    Poly shifted(const Exp& by) const {
        Poly r(vars_);
        for (const auto& [e, c] : terms_) r.terms_[exp_add(e, by)] = c;
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        // print highest terms first
        std::vector<const std::pair<const Exp, Int>*> ts;
        for (const auto& t : terms_) ts.push_back(&t);
        std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) { return graded_lex_less(b->first, a->first); });
        std::ostringstream os;
        bool first = true;
        for (auto* t : ts) {
            const Int& c = t->second;
            std::string mono = mono_string(t->first);
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            Int a = abs(c);
            if (mono.empty())
                os << a.str();
            else {
                if (a != 1) os << a.str() << "*";
                os << mono;
            }
            first = false;
        }
        return os.str();
    }

  private:
    void check_vars(const Poly& o) const {
        if (vars_ != o.vars_) throw VariableMismatch("polynomial operands have different variable lists");
    }

    static bool exp_is_zero(const Exp& e) {
        for (auto x : e)
            if (x != 0) return false;
        return true;
    }

    std::string mono_string(const Exp& e) const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!first) os << "*";
            os << vars_[i];
            if (e[i] != 1) os << "^" << e[i];
            first = false;
        }
        return os.str();
    }

    std::vector<std::string> vars_;
    std::map<Exp, Int> terms_;
};

inline Poly operator*(const Int& c, const Poly& p) { return p * c; }

// Ring homomorphism: replace each variable of p by its image (all images over
// a common target variable list). A variable occurring with a negative
// exponent must map to a unit (single term, coefficient +-1).
inline Poly substitute(const Poly& p, const std::vector<Poly>& images,
                       const std::vector<std::string>& targetVars) {
    if (images.size() != p.vars().size())
        throw Error("substitute: one image per variable required");
    for (const Poly& im : images)
        if (im.vars() != targetVars) throw VariableMismatch("substitute: image variable list mismatch");
    Poly result(targetVars);
    for (const auto& [e, c] : p.terms()) {
        Poly t = Poly::constant(targetVars, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (e[i] < 0 && !images[i].unit_inverse())
                throw NonInvertibleImage("substitute: negative power of variable '" + p.vars()[i] +
                                         "' but its image is not a unit");
            t *= images[i].pow(e[i]);
        }
        result += t;
    }
    return result;
}

// Monomial substitution: variable i maps to coeff 1 monomial with exponent
// vector exps[i] over targetVars. Fast path used by the ring maps.
inline Poly substitute_monomial(const Poly& p, const std::vector<Exp>& exps,
                                const std::vector<std::string>& targetVars) {
    if (exps.size() != p.vars().size()) throw Error("substitute_monomial: arity mismatch");
    Poly result(targetVars);
    for (const auto& [e, c] : p.terms()) {
        Exp out(targetVars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            for (std::size_t j = 0; j < targetVars.size(); ++j) out[j] += e[i] * exps[i][j];
        }
        result.add_term(out, c);
    }
    return result;
}

// Exact division of ordinary polynomials: returns p/q when q divides p in
// Z[x1..xk], nullopt otherwise. Single-divisor long division under
// graded-lex; for exact multiples every step divides.
inline std::optional<Poly> try_exact_divide_ordinary(Poly p, const Poly& q) {
    if (q.is_zero()) throw Error("division by zero polynomial");
    Poly quot(p.vars());
    auto [qe, qc] = q.leading_term();
    while (!p.is_zero()) {
        auto [pe, pc] = p.leading_term();
        Exp d = exp_sub(pe, qe);
        for (auto x : d)
            if (x < 0) return std::nullopt;
        if (pc % qc != 0) return std::nullopt;
        Poly t = Poly::monomial(p.vars(), d, pc / qc);
        quot += t;
        p -= t * q;
    }
    return quot;
}

// Exact division in the Laurent ring: shift both operands to ordinary
// polynomials first. Leading-form degrees are additive over Z, so the
// quotient's exponent range is determined by the operands'.
inline std::optional<Poly> try_exact_divide(const Poly& p, const Poly& q) {
    if (q.is_zero()) throw Error("division by zero polynomial");
    if (p.is_zero()) return Poly(p.vars());
    Exp mp = p.min_exponents(), mq = q.min_exponents();
    Exp neg_mp(mp.size()), neg_mq(mq.size());
    for (std::size_t i = 0; i < mp.size(); ++i) { neg_mp[i] = -mp[i]; neg_mq[i] = -mq[i]; }
    std::optional<Poly> h = try_exact_divide_ordinary(p.shifted(neg_mp), q.shifted(neg_mq));
    if (!h) return std::nullopt;
    return h->shifted(exp_sub(mp, mq));
}

} // namespace torman
