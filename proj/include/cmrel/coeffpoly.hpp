#pragma once
// Exact polynomials in the declared constant symbols.
//
// Invariants: stored coefficients are nonzero rationals in lowest terms;
// root-symbol exponents are 0 or 1 (squares rewrite to the radicand); terms
// are kept in descending lexicographic order of exponent vectors over the
// declaration order, which is also the canonical printing order.

#include <gmpxx.h>

#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symbols.hpp"

namespace cmrel {

inline mpq_class pow_q(const mpq_class& b, unsigned long e) {
    mpq_class r(1), x(b);
    while (e) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

inline std::string q_str(const mpq_class& q) { return q.get_str(); }

using ExpVec = std::vector<unsigned>;

struct ExpVecLexDesc {
    bool operator()(const ExpVec& a, const ExpVec& b) const { return a > b; }
};

class CoeffPoly {
public:
    using TermMap = std::map<ExpVec, mpq_class, ExpVecLexDesc>;

    CoeffPoly() : tab_(empty_table()) {}
    explicit CoeffPoly(SymbolTableRef tab) : tab_(std::move(tab)) {
        if (!tab_) throw std::invalid_argument("null symbol table");
    }

    static CoeffPoly constant(SymbolTableRef tab, const mpq_class& q) {
        CoeffPoly p(std::move(tab));
        if (q != 0) p.t_.emplace(ExpVec(p.tab_->size(), 0), q);
        return p;
    }
    static CoeffPoly symbol(SymbolTableRef tab, std::size_t idx) {
        CoeffPoly p(std::move(tab));
        if (idx >= p.tab_->size()) throw std::out_of_range("symbol index out of range");
        ExpVec e(p.tab_->size(), 0);
        e[idx] = 1;
        p.t_.emplace(std::move(e), mpq_class(1));
        return p;
    }
    static CoeffPoly symbol(const SymbolTableRef& tab, const std::string& name) {
        auto idx = tab->find(name);
        if (!idx) throw std::invalid_argument("undeclared symbol: '" + name + "'");
        return symbol(tab, *idx);
    }

    const SymbolTableRef& table() const { return tab_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t term_count() const { return t_.size(); }

    bool is_constant() const {
        if (t_.empty()) return true;
        if (t_.size() > 1) return false;
        const ExpVec& e = t_.begin()->first;
        for (unsigned x : e)
            if (x) return false;
        return true;
    }
    mpq_class constant_value() const {
        if (t_.empty()) return 0;
        if (!is_constant()) throw std::logic_error("not a constant");
        return t_.begin()->second;
    }

    bool operator==(const CoeffPoly& o) const {
        return same_table(tab_, o.tab_) && t_ == o.t_;
    }
    bool operator!=(const CoeffPoly& o) const { return !(*this == o); }

    CoeffPoly& operator+=(const CoeffPoly& o) {
        check_table(o);
        for (const auto& [e, c] : o.t_) add_term(e, c);
        return *this;
    }
    CoeffPoly& operator-=(const CoeffPoly& o) {
        check_table(o);
        for (const auto& [e, c] : o.t_) {
            mpq_class n = -c;
            add_term(e, n);
        }
        return *this;
    }
    CoeffPoly operator+(const CoeffPoly& o) const {
        CoeffPoly r(*this);
        r += o;
        return r;
    }
    CoeffPoly operator-(const CoeffPoly& o) const {
        CoeffPoly r(*this);
        r -= o;
        return r;
    }
    CoeffPoly operator-() const {
        CoeffPoly r(*this);
        for (auto& [e, c] : r.t_) c = -c;
        return r;
    }
    CoeffPoly operator*(const CoeffPoly& o) const {
        check_table(o);
        CoeffPoly r(tab_);
        for (const auto& [ea, ca] : t_)
            for (const auto& [eb, cb] : o.t_) {
                ExpVec e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                mpq_class c = ca * cb;
                r.normalize_roots(e, c);
                r.add_term(e, c);
            }
        return r;
    }
    CoeffPoly& operator*=(const CoeffPoly& o) { return *this = *this * o; }
    CoeffPoly operator*(const mpq_class& q) const {
        CoeffPoly r(tab_);
        if (q == 0) return r;
        r.t_ = t_;
        for (auto& [e, c] : r.t_) c *= q;
        return r;
    }
    friend CoeffPoly operator*(const mpq_class& q, const CoeffPoly& p) { return p * q; }

    CoeffPoly pow(unsigned long e) const {
        CoeffPoly r = constant(tab_, 1);
        CoeffPoly x(*this);
        while (e) {
            if (e & 1) r *= x;
            if (e >>= 1) x *= x;
        }
        return r;
    }

    // Evaluates at one rational per symbol (declaration order).  Root symbol
    // values must square to the radicand; a mismatch is rejected.
    mpq_class eval(const std::vector<mpq_class>& vals) const {
        if (vals.size() != tab_->size())
            throw std::invalid_argument("assignment size does not match symbol table");
        for (std::size_t i = 0; i < tab_->size(); ++i) {
            const ConstSymbol& s = tab_->at(i);
            if (s.is_root && vals[i] * vals[i] != s.radicand)
                throw std::invalid_argument("root-consistency violation for symbol '" +
                                            s.name + "'");
        }
        mpq_class acc(0);
        for (const auto& [e, c] : t_) {
            mpq_class t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) t *= pow_q(vals[i], e[i]);
            acc += t;
        }
        return acc;
    }

    // Reinterprets over a larger table whose leading symbols equal this
    // table's symbols (exponent vectors extend with zeros).
    CoeffPoly lift(const SymbolTableRef& bigger) const {
        if (bigger->size() < tab_->size())
            throw std::invalid_argument("lift target table is smaller");
        for (std::size_t i = 0; i < tab_->size(); ++i)
            if (!(bigger->at(i) == tab_->at(i)))
                throw std::invalid_argument("lift target table is not an extension");
        CoeffPoly r(bigger);
        for (const auto& [e, c] : t_) {
            ExpVec ne(bigger->size(), 0);
            std::copy(e.begin(), e.end(), ne.begin());
            r.t_.emplace(std::move(ne), c);
        }
        return r;
    }

    // Sign of the leading (canonical-order first) coefficient; 0 when zero.
    int leading_sign() const {
        if (t_.empty()) return 0;
        return sgn(t_.begin()->second);
    }

    std::string to_string() const {
        if (t_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : t_) {
            bool neg = c < 0;
            mpq_class mag = abs(c);
            if (first) {
                if (neg) out += "-";
                first = false;
            } else {
                out += neg ? " - " : " + ";
            }
            out += term_body(e, mag);
        }
        return out;
    }

    // Renders one term's magnitude ("2*a", "d21^2", "3/4").
    std::string term_body(const ExpVec& e, const mpq_class& mag) const {
        std::vector<std::string> parts;
        bool any_sym = false;
        for (unsigned x : e)
            if (x) any_sym = true;
        if (mag != 1 || !any_sym) parts.push_back(q_str(mag));
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            std::string p = tab_->at(i).name;
            if (e[i] > 1) p += "^" + std::to_string(e[i]);
            parts.push_back(std::move(p));
        }
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += "*";
            out += parts[i];
        }
        return out;
    }

    void add_term(ExpVec e, mpq_class c) {
        if (c == 0) return;
        if (e.size() != tab_->size())
            throw std::invalid_argument("exponent vector width mismatch");
        normalize_roots(e, c);
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }

private:
    void check_table(const CoeffPoly& o) const {
        if (!same_table(tab_, o.tab_))
            throw std::invalid_argument("mixed symbol tables");
    }
    // Rewrites squares of root symbols into their radicands.
    void normalize_roots(ExpVec& e, mpq_class& c) const {
        for (std::size_t i = 0; i < e.size(); ++i) {
            const ConstSymbol& s = tab_->at(i);
            if (s.is_root && e[i] >= 2) {
                c *= pow_q(s.radicand, e[i] / 2);
                e[i] %= 2;
            }
        }
    }

    SymbolTableRef tab_;
    TermMap t_;
};

}  // namespace cmrel
