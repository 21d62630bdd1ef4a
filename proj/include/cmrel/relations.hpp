#pragma once
// Construction of the named relation polynomials and certification of their
// non-triviality modulo the determinant ideal.
//
// The ramified-case polynomials are assembled from Z = adj(Y)*M*Y with
// Y = [[X11,X12],[X21,X22]] and M = [[a,0],[b,-a]], combined through
//   Q12 = Z12 - p^2*d12                W11 = p*(Z11 - d11)
//   Ra  = d12*d21^2*p^2 + d12*p^2 + d21^2*Z12
//   Rb  = 2*d11*d21*p*Z12 - 2*d12*d21*p^2*W11
//   Rc  = -2*d11*p*W11*Z12 + d21*Z12^2 - p^2*Z12^2*Z21
//   Rd  = d12*Q12^2 + 4*d11*p^2*Z12^2*Z21 - 2*d11*p*Z12*W11
//   R3  = d21*Rb - 2*d11*p*Ra           R4 = d21*Rc - Q12*Ra
//   R5  = d21*Z12*Z21 + d21*(Z11+d11)^2 - d12*Z12^2 - d11*d21*(Z11+d11)
// d22 is eliminated as -d11 throughout and p denotes the (1,1) period entry.
// The polynomials are stored inhomogeneous, exactly as combined (constants
// sit at the unit monomial); homogenize_det() lifts them against the
// determinant form when a homogeneous input is needed.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relpoly.hpp"

namespace cmrel {

enum class RelationCase {
    ORD,
    SSING,
    ARCH1,
    ARCH2,
    RAM0,
    RAM_AB,
    RAM_AC,
    RAM_1IA,
    RAM_1IB,
    RAM_FINAL,
};

inline constexpr std::array<RelationCase, 6> kRamifiedCases = {
    RelationCase::RAM0,   RelationCase::RAM_AB,  RelationCase::RAM_AC,
    RelationCase::RAM_1IA, RelationCase::RAM_1IB, RelationCase::RAM_FINAL,
};

inline constexpr std::array<RelationCase, 10> kAllCases = {
    RelationCase::ORD,    RelationCase::SSING,   RelationCase::ARCH1,
    RelationCase::ARCH2,  RelationCase::RAM0,    RelationCase::RAM_AB,
    RelationCase::RAM_AC, RelationCase::RAM_1IA, RelationCase::RAM_1IB,
    RelationCase::RAM_FINAL,
};

inline const char* case_token(RelationCase c) {
    switch (c) {
        case RelationCase::ORD: return "ord";
        case RelationCase::SSING: return "ssing";
        case RelationCase::ARCH1: return "arch1";
        case RelationCase::ARCH2: return "arch2";
        case RelationCase::RAM0: return "ram0";
        case RelationCase::RAM_AB: return "ram";
        case RelationCase::RAM_AC: return "ram2";
        case RelationCase::RAM_1IA: return "ram3";
        case RelationCase::RAM_1IB: return "ram4";
        case RelationCase::RAM_FINAL: return "ram5";
    }
    throw std::logic_error("unreachable");
}

inline std::optional<RelationCase> case_from_token(const std::string& s) {
    for (RelationCase c : kAllCases)
        if (s == case_token(c)) return c;
    return std::nullopt;
}

// A nonvanishing requirement on the declared constants.
struct Constraint {
    std::string label;
    CoeffPoly expr;
};

struct RelationSpec {
    RelationCase kind;
    std::string name;  // CLI token
    SymbolTableRef symbols;
    RelPoly polynomial;
    std::vector<Constraint> constraints;
};

namespace detail {

// Z = adj(Y) * [[a,0],[b,-a]] * Y over a table declaring a and b.
inline PolyMatrix2 ram_z(const SymbolTableRef& tab) {
    CoeffPoly a = CoeffPoly::symbol(tab, "a");
    CoeffPoly b = CoeffPoly::symbol(tab, "b");
    return conjugation_matrix(tab, {a, CoeffPoly(tab), b, -a});
}

struct RamParts {
    SymbolTableRef tab;
    CoeffPoly d11, d12, d21, p, a, b;
    RelPoly z11, z12, z21;

    CoeffPoly c(const mpq_class& q) const { return CoeffPoly::constant(tab, q); }
    RelPoly k(const CoeffPoly& q) const { return RelPoly::constant(tab, q); }
};

// Declares the requested subset of {d11,d12,d21,p} plus a,b (declaration
// order follows the source listings) and expands Z.
inline RamParts make_ram_parts(bool with_d11, bool with_d12, bool with_d21, bool with_p) {
    SymbolTable t;
    if (with_d11) t.add_free("d11");
    if (with_d12) t.add_free("d12");
    if (with_d21) t.add_free("d21");
    if (with_p) t.add_free("p");
    t.add_free("a");
    t.add_free("b");
    RamParts r;
    r.tab = make_table(std::move(t));
    auto sym = [&](const char* n, bool present) {
        return present ? CoeffPoly::symbol(r.tab, n) : CoeffPoly(r.tab);
    };
    r.d11 = sym("d11", with_d11);
    r.d12 = sym("d12", with_d12);
    r.d21 = sym("d21", with_d21);
    r.p = sym("p", with_p);
    r.a = CoeffPoly::symbol(r.tab, "a");
    r.b = CoeffPoly::symbol(r.tab, "b");
    PolyMatrix2 z = ram_z(r.tab);
    r.z11 = z.a[0];
    r.z12 = z.a[1];
    r.z21 = z.a[2];
    return r;
}

inline Constraint nonzero(const SymbolTableRef& tab, const char* name) {
    return {std::string(name) + " != 0", CoeffPoly::symbol(tab, name)};
}
// Invertibility of [[d11,d12],[d21,-d11]]: det = -(d11^2 + d12*d21) != 0.
inline Constraint invertible_special(const SymbolTableRef& tab) {
    CoeffPoly d11 = CoeffPoly::symbol(tab, "d11");
    CoeffPoly d12 = CoeffPoly::symbol(tab, "d12");
    CoeffPoly d21 = CoeffPoly::symbol(tab, "d21");
    return {"d11^2 + d12*d21 != 0", d11 * d11 + d12 * d21};
}

}  // namespace detail

// Builds the named relation polynomial with its constraint set.  The root
// symbol in the supersingular case carries the given exact radicand (the
// symbolic verdicts do not depend on it; rational witness sampling needs a
// perfect square).
inline RelationSpec build_relation(RelationCase kind, const mpq_class& ssing_radicand = 9) {
    using detail::make_ram_parts;
    RelationSpec spec;
    spec.kind = kind;
    spec.name = case_token(kind);
    switch (kind) {
        case RelationCase::ORD: {
            spec.symbols = empty_table();
            spec.polynomial = RelPoly::variable(spec.symbols, 1);
            return spec;
        }
        case RelationCase::SSING: {
            SymbolTable t;
            t.add_free("m");
            t.add_free("a_s");
            t.add_root("s", ssing_radicand);
            spec.symbols = make_table(std::move(t));
            const auto& tab = spec.symbols;
            CoeffPoly m = CoeffPoly::symbol(tab, "m");
            CoeffPoly as = CoeffPoly::symbol(tab, "a_s");
            CoeffPoly s = CoeffPoly::symbol(tab, "s");
            RelPoly x11 = RelPoly::variable(tab, 0), x12 = RelPoly::variable(tab, 1);
            RelPoly x21 = RelPoly::variable(tab, 2), x22 = RelPoly::variable(tab, 3);
            mpq_class two(2);
            spec.polynomial = (x11 * (x22 + x12 * as)) * (m + two * s) -
                              (x12 * (x21 + x11 * as)) * (m - two * s);
            spec.constraints.push_back({"s != 0", s});
            return spec;
        }
        case RelationCase::ARCH1: {
            SymbolTable t;
            t.add_free("m");
            t.add_free("a_s");
            spec.symbols = make_table(std::move(t));
            const auto& tab = spec.symbols;
            CoeffPoly m = CoeffPoly::symbol(tab, "m");
            CoeffPoly as = CoeffPoly::symbol(tab, "a_s");
            RelPoly x11 = RelPoly::variable(tab, 0), x12 = RelPoly::variable(tab, 1);
            RelPoly x22 = RelPoly::variable(tab, 3);
            spec.polynomial = x11 * (x22 + x12 * as) - det_form(tab) * m;
            return spec;
        }
        case RelationCase::ARCH2: {
            SymbolTable t;
            t.add_free("n_s");
            t.add_free("a_s");
            spec.symbols = make_table(std::move(t));
            const auto& tab = spec.symbols;
            CoeffPoly ns = CoeffPoly::symbol(tab, "n_s");
            CoeffPoly as = CoeffPoly::symbol(tab, "a_s");
            RelPoly x11 = RelPoly::variable(tab, 0), x12 = RelPoly::variable(tab, 1);
            RelPoly x21 = RelPoly::variable(tab, 2);
            spec.polynomial = x12 * (x21 + x11 * as) - det_form(tab) * ns;
            return spec;
        }
        case RelationCase::RAM0: {
            auto r = make_ram_parts(false, false, false, false);
            spec.symbols = r.tab;
            spec.polynomial = r.z12;
            spec.constraints.push_back(detail::nonzero(r.tab, "a"));
            return spec;
        }
        case RelationCase::RAM_AB: {
            auto r = make_ram_parts(true, true, true, true);
            spec.symbols = r.tab;
            CoeffPoly p2 = r.p * r.p;
            RelPoly w11 = (r.z11 - r.k(r.d11)) * r.p;
            RelPoly ra = r.k(r.d12 * r.d21 * r.d21 * p2 + r.d12 * p2) + r.z12 * (r.d21 * r.d21);
            RelPoly rb = r.z12 * (mpq_class(2) * (r.d11 * r.d21 * r.p)) -
                         w11 * (mpq_class(2) * (r.d12 * r.d21 * p2));
            spec.polynomial = rb * r.d21 - ra * (mpq_class(2) * (r.d11 * r.p));
            spec.constraints = {detail::nonzero(r.tab, "a"), detail::nonzero(r.tab, "p"),
                                detail::nonzero(r.tab, "d21"), detail::invertible_special(r.tab)};
            return spec;
        }
        case RelationCase::RAM_AC: {
            auto r = make_ram_parts(true, true, true, true);
            spec.symbols = r.tab;
            CoeffPoly p2 = r.p * r.p;
            RelPoly w11 = (r.z11 - r.k(r.d11)) * r.p;
            RelPoly q12 = r.z12 - r.k(p2 * r.d12);
            RelPoly ra = r.k(r.d12 * r.d21 * r.d21 * p2 + r.d12 * p2) + r.z12 * (r.d21 * r.d21);
            RelPoly rc = -(w11 * r.z12) * (mpq_class(2) * (r.d11 * r.p)) +
                         (r.z12 * r.z12) * r.d21 - (r.z12 * r.z12 * r.z21) * p2;
            spec.polynomial = rc * r.d21 - q12 * ra;
            spec.constraints = {detail::nonzero(r.tab, "a"), detail::nonzero(r.tab, "p"),
                                detail::nonzero(r.tab, "d21"), detail::invertible_special(r.tab)};
            return spec;
        }
        case RelationCase::RAM_1IA: {
            auto r = make_ram_parts(true, true, false, true);
            spec.symbols = r.tab;
            CoeffPoly p2 = r.p * r.p;
            RelPoly w11 = (r.z11 - r.k(r.d11)) * r.p;
            RelPoly q12 = r.z12 - r.k(p2 * r.d12);
            spec.polynomial = (q12 * q12) * r.d12 +
                              (r.z12 * r.z12 * r.z21) * (mpq_class(4) * (r.d11 * p2)) -
                              (r.z12 * w11) * (mpq_class(2) * (r.d11 * r.p));
            spec.constraints = {detail::nonzero(r.tab, "a"), detail::nonzero(r.tab, "p"),
                                detail::nonzero(r.tab, "d11"), detail::nonzero(r.tab, "d12")};
            return spec;
        }
        case RelationCase::RAM_1IB: {
            auto r = make_ram_parts(true, true, true, true);
            spec.symbols = r.tab;
            CoeffPoly p2 = r.p * r.p;
            spec.polynomial =
                r.k(r.d12 * r.d21 * r.d21 * p2 + r.d12 * p2) + r.z12 * (r.d21 * r.d21);
            spec.constraints = {detail::nonzero(r.tab, "a"), detail::nonzero(r.tab, "p"),
                                detail::nonzero(r.tab, "d21"), detail::invertible_special(r.tab)};
            return spec;
        }
        case RelationCase::RAM_FINAL: {
            auto r = make_ram_parts(true, true, true, false);
            spec.symbols = r.tab;
            RelPoly shifted = r.z11 + r.k(r.d11);
            spec.polynomial = (r.z12 * r.z21) * r.d21 + (shifted * shifted) * r.d21 -
                              (r.z12 * r.z12) * r.d12 - shifted * (r.d11 * r.d21);
            spec.constraints = {detail::nonzero(r.tab, "a"), detail::nonzero(r.tab, "d21"),
                                detail::invertible_special(r.tab)};
            return spec;
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Test-matrix substitution.

enum class TestFamily { S, T };  // S(n,l) = [[n,l],[0,1/n]], T(n) = [[0,1/n],[-n,0]]

// Substitutes the family entries into a homogeneous polynomial of degree d
// and clears the 1/n denominators by multiplying through n^d.  The result
// lives over the declared constants extended by fresh free symbols n and l.
inline CoeffPoly test_matrix_eval(const RelationSpec& spec, TestFamily fam) {
    auto deg_opt = spec.polynomial.homogeneous_degree();
    if (!deg_opt)
        throw std::invalid_argument(
            "inhomogeneous input: test matrices require a homogeneous polynomial "
            "(homogenize against the determinant form first)");
    unsigned deg = *deg_opt;
    SymbolTable ext = *spec.symbols;
    std::size_t ni = ext.add_free("n");
    std::size_t li = ext.add_free("l");
    SymbolTableRef etab = make_table(std::move(ext));
    CoeffPoly out(etab);
    for (const auto& [m, c] : spec.polynomial.terms()) {
        unsigned e11 = m.e[0], e12 = m.e[1], e21 = m.e[2], e22 = m.e[3];
        unsigned npow = 0, lpow = 0;
        bool negate = false;
        if (fam == TestFamily::S) {
            if (e21 > 0) continue;                 // S has a zero (2,1) entry
            npow = deg + e11 - e22;                // n^e11 * (1/n)^e22 * n^deg
            lpow = e12;
        } else {
            if (e11 > 0 || e22 > 0) continue;      // T has zero diagonal
            npow = deg - e12 + e21;                // (1/n)^e12 * n^e21 * n^deg
            negate = (e21 % 2) != 0;               // (-n)^e21
        }
        CoeffPoly piece = c.lift(etab);
        ExpVec shift(etab->size(), 0);
        shift[ni] = npow;
        shift[li] = lpow;
        CoeffPoly mono(etab);
        mono.add_term(std::move(shift), negate ? mpq_class(-1) : mpq_class(1));
        out += piece * mono;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Linear-dependence check for {I, A0, As, A0*As}.

struct ClaimResult {
    bool dependent;
    CoeffPoly det;  // 4x4 determinant of the flattened quadruple
};

namespace detail {

inline CoeffPoly det4(const std::array<CoeffPoly, 16>& m, const SymbolTableRef& tab) {
    // Permutation expansion; 24 terms of small polynomials.
    static const int perms[24][4] = {
        {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {0, 3, 2, 1},
        {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0}, {1, 3, 0, 2}, {1, 3, 2, 0},
        {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3}, {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0},
        {3, 0, 1, 2}, {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};
    auto parity = [](const int* p) {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p[i] > p[j]) ++inv;
        return inv % 2;
    };
    CoeffPoly acc(tab);
    for (const auto& p : perms) {
        CoeffPoly t = CoeffPoly::constant(tab, parity(p) ? -1 : 1);
        for (int r = 0; r < 4; ++r) t *= m[static_cast<std::size_t>(4 * r + p[r])];
        acc += t;
    }
    return acc;
}

}  // namespace detail

// Flattens I, A0 = [[e,0],[f,-e]], As = [[d11,d12],[d21,-d11]] and A0*As into
// a 4x4 matrix over the coefficient ring and decides dependence by exact
// determinant vanishing.  All five entry polynomials share one table.
inline ClaimResult claim_dependence(const SymbolTableRef& tab, const CoeffPoly& e,
                                    const CoeffPoly& f, const CoeffPoly& d11,
                                    const CoeffPoly& d12, const CoeffPoly& d21) {
    CoeffPoly zero(tab), one = CoeffPoly::constant(tab, 1);
    // A0*As = [[e*d11, e*d12], [f*d11 - e*d21, f*d12 + e*d11]].
    std::array<CoeffPoly, 16> m = {
        one, zero, zero, one,
        e, zero, f, -e,
        d11, d12, d21, -d11,
        e * d11, e * d12, f * d11 - e * d21, f * d12 + e * d11,
    };
    CoeffPoly det = detail::det4(m, tab);
    return {det.is_zero(), det};
}

// The degenerate special fiber d12 = d21 = 0 forces {I, A0, As, A0*As}
// dependent for every lower-triangular trace-zero A0; returns true exactly
// when that dependence is confirmed symbolically.
inline bool claim_check() {
    SymbolTable t;
    t.add_free("e");
    t.add_free("f");
    t.add_free("d11");
    SymbolTableRef tab = make_table(std::move(t));
    CoeffPoly zero(tab);
    ClaimResult r = claim_dependence(tab, CoeffPoly::symbol(tab, "e"),
                                     CoeffPoly::symbol(tab, "f"),
                                     CoeffPoly::symbol(tab, "d11"), zero, zero);
    return r.dependent;
}

// ---------------------------------------------------------------------------
// Non-triviality certification.

struct Witness {
    std::vector<std::pair<std::string, mpq_class>> constants;  // declaration order
    std::array<mpq_class, 4> point;                            // det-one matrix entries
    mpq_class value;                                           // remainder at the witness
};

enum class SamplingOutcome { WitnessFound, Inconclusive, NotApplicable };

struct NontrivialityReport {
    std::string case_name;
    ReductionResult reduction;
    std::vector<std::pair<Monomial4, CoeffPoly>> coefficient_table;
    bool symbolically_nonzero;
    std::optional<Witness> witness;
    SamplingOutcome sampling = SamplingOutcome::NotApplicable;
    unsigned trials = 0;
    std::uint64_t seed = 0;
};

// Reduces the relation modulo the determinant ideal, reports the remainder's
// coefficient table, and searches for a rational witness: constants are drawn
// uniformly from integers in [-box, box] (root symbols from the two square
// roots of their radicand), assignments violating a constraint are redrawn,
// and the remainder is evaluated at a random determinant-one matrix
//   [[1+u*v, (1+u*v)*w+u], [v, v*w+1]].
// Deterministic given seed: draws happen in declaration order, trial by trial.
inline NontrivialityReport nontrivial_check(const RelationSpec& spec, unsigned trials,
                                            std::uint64_t seed, long box = 1000) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (box < 1) throw std::invalid_argument("sample box must be >= 1");
    NontrivialityReport rep;
    rep.case_name = spec.name;
    rep.reduction = reduce_sl2(spec.polynomial);
    rep.coefficient_table = rep.reduction.remainder.coefficient_rules();
    rep.symbolically_nonzero = !rep.reduction.remainder.is_zero();
    rep.trials = trials;
    rep.seed = seed;
    if (!rep.symbolically_nonzero) {
        rep.sampling = SamplingOutcome::NotApplicable;
        return rep;
    }

    const SymbolTableRef& tab = spec.symbols;
    // Root symbols need a rational square root of the radicand.
    std::vector<std::optional<mpq_class>> root_abs(tab->size());
    for (std::size_t i = 0; i < tab->size(); ++i) {
        const ConstSymbol& s = tab->at(i);
        if (!s.is_root) continue;
        mpq_class rad = s.radicand;
        if (rad < 0)
            throw std::domain_error(
                "constraint set unsatisfiable over the sample domain: radicand of '" +
                s.name + "' is negative");
        mpz_class num = rad.get_num(), den = rad.get_den();
        if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
            throw std::domain_error(
                "constraint set unsatisfiable over the sample domain: radicand of '" +
                s.name + "' is not a rational square");
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
        mpq_class root(sn, sd);
        root.canonicalize();
        root_abs[i] = root;
    }

    std::mt19937_64 rng(seed);
    auto draw_int = [&]() -> long {
        unsigned long span = 2ul * static_cast<unsigned long>(box) + 1ul;
        return static_cast<long>(rng() % span) - box;
    };

    rep.sampling = SamplingOutcome::Inconclusive;
    for (unsigned t = 0; t < trials; ++t) {
        // Draw constants until every constraint is nonzero.
        std::vector<mpq_class> vals(tab->size());
        bool ok = false;
        const int kMaxRedraws = 128;
        std::string failing;
        for (int attempt = 0; attempt < kMaxRedraws && !ok; ++attempt) {
            for (std::size_t i = 0; i < tab->size(); ++i) {
                if (root_abs[i])
                    vals[i] = (rng() & 1) ? *root_abs[i] : mpq_class(-*root_abs[i]);
                else
                    vals[i] = mpq_class(draw_int());
            }
            ok = true;
            for (const Constraint& c : spec.constraints) {
                if (c.expr.eval(vals) == 0) {
                    ok = false;
                    failing = c.label;
                    break;
                }
            }
        }
        if (!ok)
            throw std::domain_error(
                "constraint set unsatisfiable over the sample domain: '" + failing +
                "' kept vanishing");

        long u = draw_int(), v = draw_int(), w = draw_int();
        mpq_class x11 = 1 + mpq_class(u) * v;
        std::array<mpq_class, 4> x = {x11, x11 * w + u, mpq_class(v), mpq_class(v) * w + 1};
        mpq_class value = rep.reduction.remainder.evaluate(x, vals);
        if (value != 0) {
            Witness wit;
            for (std::size_t i = 0; i < tab->size(); ++i)
                wit.constants.emplace_back(tab->at(i).name, vals[i]);
            wit.point = x;
            wit.value = value;
            rep.witness = std::move(wit);
            rep.sampling = SamplingOutcome::WitnessFound;
            break;
        }
    }
    return rep;
}

}  // namespace cmrel
