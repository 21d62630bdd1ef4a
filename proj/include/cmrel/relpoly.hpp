#pragma once
// Exact polynomials in the 2x2 matrix entries X11, X12, X21, X22 over
// CoeffPoly coefficients, together with division by the determinant relation
//   g = X11*X22 - X12*X21 - 1.
//
// Monomial order: lexicographic with X11 > X12 > X21 > X22, terms stored
// descending.  The leading monomial of g is X11*X22 and its leading
// coefficient is 1, so division works over the coefficient ring and the
// remainder is the unique normal form with no monomial divisible by X11*X22.

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coeffpoly.hpp"

namespace cmrel {

struct Monomial4 {
    std::array<unsigned, 4> e{};  // exponents of X11, X12, X21, X22

    unsigned total_degree() const { return e[0] + e[1] + e[2] + e[3]; }
    bool is_unit() const { return total_degree() == 0; }
    bool divisible_by(const Monomial4& d) const {
        for (int i = 0; i < 4; ++i)
            if (e[i] < d.e[i]) return false;
        return true;
    }
    friend Monomial4 operator*(const Monomial4& a, const Monomial4& b) {
        Monomial4 r;
        for (int i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
        return r;
    }
    Monomial4 operator/(const Monomial4& d) const {
        Monomial4 r;
        for (int i = 0; i < 4; ++i) {
            if (e[i] < d.e[i]) throw std::logic_error("monomial not divisible");
            r.e[i] = e[i] - d.e[i];
        }
        return r;
    }
    bool operator==(const Monomial4&) const = default;
};

struct Mono4LexDesc {
    bool operator()(const Monomial4& a, const Monomial4& b) const { return a.e > b.e; }
};

inline const char* kVarNames[4] = {"X11", "X12", "X21", "X22"};

inline std::string mono4_str(const Monomial4& m) {
    if (m.is_unit()) return "1";
    std::string out;
    for (int i = 0; i < 4; ++i) {
        if (!m.e[i]) continue;
        if (!out.empty()) out += "*";
        out += kVarNames[i];
        if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
    }
    return out;
}

class RelPoly {
public:
    using TermMap = std::map<Monomial4, CoeffPoly, Mono4LexDesc>;

    RelPoly() : tab_(empty_table()) {}
    explicit RelPoly(SymbolTableRef tab) : tab_(std::move(tab)) {
        if (!tab_) throw std::invalid_argument("null symbol table");
    }

    static RelPoly zero(SymbolTableRef tab) { return RelPoly(std::move(tab)); }
    static RelPoly variable(SymbolTableRef tab, int idx) {
        if (idx < 0 || idx > 3) throw std::out_of_range("variable index");
        RelPoly p(std::move(tab));
        Monomial4 m;
        m.e[idx] = 1;
        p.t_.emplace(m, CoeffPoly::constant(p.tab_, 1));
        return p;
    }
    static RelPoly constant(SymbolTableRef tab, const CoeffPoly& c) {
        RelPoly p(std::move(tab));
        if (!same_table(p.tab_, c.table()))
            throw std::invalid_argument("mixed symbol tables");
        if (!c.is_zero()) p.t_.emplace(Monomial4{}, c);
        return p;
    }
    static RelPoly constant(SymbolTableRef tab, const mpq_class& q) {
        RelPoly p(std::move(tab));
        if (q != 0) p.t_.emplace(Monomial4{}, CoeffPoly::constant(p.tab_, q));
        return p;
    }
    static RelPoly term(SymbolTableRef tab, const Monomial4& m, const CoeffPoly& c) {
        RelPoly p(std::move(tab));
        if (!same_table(p.tab_, c.table()))
            throw std::invalid_argument("mixed symbol tables");
        if (!c.is_zero()) p.t_.emplace(m, c);
        return p;
    }

    const SymbolTableRef& table() const { return tab_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t term_count() const { return t_.size(); }

    bool operator==(const RelPoly& o) const {
        return same_table(tab_, o.tab_) && t_ == o.t_;
    }
    bool operator!=(const RelPoly& o) const { return !(*this == o); }

    RelPoly& operator+=(const RelPoly& o) {
        check_table(o);
        for (const auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    RelPoly& operator-=(const RelPoly& o) {
        check_table(o);
        for (const auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    RelPoly operator+(const RelPoly& o) const {
        RelPoly r(*this);
        r += o;
        return r;
    }
    RelPoly operator-(const RelPoly& o) const {
        RelPoly r(*this);
        r -= o;
        return r;
    }
    RelPoly operator-() const {
        RelPoly r(*this);
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    RelPoly operator*(const RelPoly& o) const {
        check_table(o);
        RelPoly r(tab_);
        for (const auto& [ma, ca] : t_)
            for (const auto& [mb, cb] : o.t_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    RelPoly& operator*=(const RelPoly& o) { return *this = *this * o; }

    // Scaling by a coefficient-ring element.
    RelPoly operator*(const CoeffPoly& c) const {
        if (!same_table(tab_, c.table()))
            throw std::invalid_argument("mixed symbol tables");
        RelPoly r(tab_);
        if (c.is_zero()) return r;
        for (const auto& [m, cm] : t_) r.add_term(m, cm * c);
        return r;
    }
    friend RelPoly operator*(const CoeffPoly& c, const RelPoly& p) { return p * c; }
    RelPoly operator*(const mpq_class& q) const {
        RelPoly r(tab_);
        if (q == 0) return r;
        for (const auto& [m, cm] : t_) r.t_.emplace(m, cm * q);
        return r;
    }
    friend RelPoly operator*(const mpq_class& q, const RelPoly& p) { return p * q; }

    RelPoly pow(unsigned long e) const {
        RelPoly r = constant(tab_, mpq_class(1));
        RelPoly x(*this);
        while (e) {
            if (e & 1) r *= x;
            if (e >>= 1) x *= x;
        }
        return r;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : t_) d = std::max(d, m.total_degree());
        return d;
    }
    // Degree when every monomial has the same total degree, empty otherwise.
    std::optional<unsigned> homogeneous_degree() const {
        if (t_.empty()) return 0u;
        unsigned d = t_.begin()->first.total_degree();
        for (const auto& [m, c] : t_)
            if (m.total_degree() != d) return std::nullopt;
        return d;
    }

    // Nonzero terms in descending lexicographic order.
    std::vector<std::pair<Monomial4, CoeffPoly>> coefficient_rules() const {
        std::vector<std::pair<Monomial4, CoeffPoly>> out;
        out.reserve(t_.size());
        for (const auto& [m, c] : t_) out.emplace_back(m, c);
        return out;
    }

    mpq_class evaluate(const std::array<mpq_class, 4>& x,
                       const std::vector<mpq_class>& consts) const {
        mpq_class acc(0);
        for (const auto& [m, c] : t_) {
            mpq_class t = c.eval(consts);
            for (int i = 0; i < 4; ++i)
                if (m.e[i]) t *= pow_q(x[i], m.e[i]);
            acc += t;
        }
        return acc;
    }

    std::string to_string() const {
        if (t_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : t_) {
            if (c.term_count() == 1) {
                const auto& [e, q] = *c.terms().begin();
                bool neg = q < 0;
                mpq_class mag = abs(q);
                std::string body = c.term_body(e, mag);
                std::string piece;
                if (m.is_unit()) {
                    piece = body;
                } else if (body == "1") {
                    piece = mono4_str(m);
                } else {
                    piece = body + "*" + mono4_str(m);
                }
                if (first) {
                    if (neg) out += "-";
                    out += piece;
                    first = false;
                } else {
                    out += neg ? " - " : " + ";
                    out += piece;
                }
            } else {
                // Composite coefficients print parenthesized, sign kept inside.
                std::string piece = "(" + c.to_string() + ")";
                if (!m.is_unit()) piece += "*" + mono4_str(m);
                if (first) {
                    out += piece;
                    first = false;
                } else {
                    out += " + " + piece;
                }
            }
        }
        return out;
    }

    void add_term(const Monomial4& m, const CoeffPoly& c) {
        if (c.is_zero()) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

private:
    void check_table(const RelPoly& o) const {
        if (!same_table(tab_, o.tab_))
            throw std::invalid_argument("mixed symbol tables");
    }

    SymbolTableRef tab_;
    TermMap t_;
};

// The determinant relation g = X11*X22 - X12*X21 - 1.
inline RelPoly det_generator(const SymbolTableRef& tab) {
    RelPoly g(tab);
    g.add_term(Monomial4{{1, 0, 0, 1}}, CoeffPoly::constant(tab, 1));
    g.add_term(Monomial4{{0, 1, 1, 0}}, CoeffPoly::constant(tab, -1));
    g.add_term(Monomial4{}, CoeffPoly::constant(tab, -1));
    return g;
}

// The homogeneous determinant form X11*X22 - X12*X21 (no constant term).
inline RelPoly det_form(const SymbolTableRef& tab) {
    RelPoly d(tab);
    d.add_term(Monomial4{{1, 0, 0, 1}}, CoeffPoly::constant(tab, 1));
    d.add_term(Monomial4{{0, 1, 1, 0}}, CoeffPoly::constant(tab, -1));
    return d;
}

struct ReductionResult {
    RelPoly quotient;
    RelPoly remainder;
};

// Division by g: f = quotient*g + remainder exactly, and no monomial of the
// remainder is divisible by X11*X22.  Terminates because replacing the leading
// term c*u*X11*X22 by c*u*(X12*X21 + 1) strictly lowers the leading monomial.
inline ReductionResult reduce_sl2(const RelPoly& f) {
    const SymbolTableRef& tab = f.table();
    RelPoly g = det_generator(tab);
    const Monomial4 lm_g{{1, 0, 0, 1}};
    RelPoly p = f;
    RelPoly q = RelPoly::zero(tab);
    RelPoly r = RelPoly::zero(tab);
    while (!p.is_zero()) {
        const auto& [m, c] = *p.terms().begin();
        RelPoly t = RelPoly::term(tab, m, c);
        if (m.divisible_by(lm_g)) {
            RelPoly u = RelPoly::term(tab, m / lm_g, c);
            q += u;
            p -= u * g;
        } else {
            r += t;
            p -= t;
        }
    }
    return {q, r};
}

inline bool in_ideal(const RelPoly& f) { return reduce_sl2(f).remainder.is_zero(); }

// Multiplies each term by the power of the determinant form that equalizes
// total degrees.  Degree gaps must be even (the determinant form has degree
// 2); on determinant-one points the value is unchanged.
inline RelPoly homogenize_det(const RelPoly& f) {
    if (f.is_zero()) return f;
    unsigned D = f.total_degree();
    RelPoly d = det_form(f.table());
    RelPoly out = RelPoly::zero(f.table());
    for (const auto& [m, c] : f.terms()) {
        unsigned gap = D - m.total_degree();
        if (gap % 2 != 0)
            throw std::invalid_argument(
                "cannot homogenize: odd degree gap against the degree-2 determinant form");
        out += RelPoly::term(f.table(), m, c) * d.pow(gap / 2);
    }
    return out;
}

struct PolyMatrix2 {
    // Row-major entries: a[0]=(1,1), a[1]=(1,2), a[2]=(2,1), a[3]=(2,2).
    std::array<RelPoly, 4> a;

    static PolyMatrix2 generic(const SymbolTableRef& tab) {
        return {{{RelPoly::variable(tab, 0), RelPoly::variable(tab, 1),
                  RelPoly::variable(tab, 2), RelPoly::variable(tab, 3)}}};
    }
    static PolyMatrix2 identity(const SymbolTableRef& tab) {
        return {{{RelPoly::constant(tab, mpq_class(1)), RelPoly::zero(tab),
                  RelPoly::zero(tab), RelPoly::constant(tab, mpq_class(1))}}};
    }
    static PolyMatrix2 from_coeffs(const SymbolTableRef& tab,
                                   const std::array<CoeffPoly, 4>& m) {
        return {{{RelPoly::constant(tab, m[0]), RelPoly::constant(tab, m[1]),
                  RelPoly::constant(tab, m[2]), RelPoly::constant(tab, m[3])}}};
    }

    PolyMatrix2 operator*(const PolyMatrix2& o) const {
        return {{{a[0] * o.a[0] + a[1] * o.a[2], a[0] * o.a[1] + a[1] * o.a[3],
                  a[2] * o.a[0] + a[3] * o.a[2], a[2] * o.a[1] + a[3] * o.a[3]}}};
    }
    PolyMatrix2 operator+(const PolyMatrix2& o) const {
        return {{{a[0] + o.a[0], a[1] + o.a[1], a[2] + o.a[2], a[3] + o.a[3]}}};
    }
    PolyMatrix2 operator-(const PolyMatrix2& o) const {
        return {{{a[0] - o.a[0], a[1] - o.a[1], a[2] - o.a[2], a[3] - o.a[3]}}};
    }

    // adj([[p,q],[r,s]]) = [[s,-q],[-r,p]]; M*adj(M) = det(M)*I.
    PolyMatrix2 adjugate() const { return {{{a[3], -a[1], -a[2], a[0]}}}; }
    RelPoly det() const { return a[0] * a[3] - a[1] * a[2]; }
    RelPoly trace() const { return a[0] + a[3]; }

    bool operator==(const PolyMatrix2& o) const { return a == o.a; }
};

// adj(Y) * M * Y for generic Y = [[X11,X12],[X21,X22]] and a constant matrix
// M over the table's coefficient ring.
inline PolyMatrix2 conjugation_matrix(const SymbolTableRef& tab,
                                      const std::array<CoeffPoly, 4>& m) {
    PolyMatrix2 y = PolyMatrix2::generic(tab);
    return y.adjugate() * PolyMatrix2::from_coeffs(tab, m) * y;
}

}  // namespace cmrel
