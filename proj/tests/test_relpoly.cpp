#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <cmrel/parse.hpp>
#include <cmrel/relpoly.hpp>

using namespace cmrel;

namespace {

SymbolTableRef abs_table() {
    SymbolTable t;
    t.add_free("a");
    t.add_free("b");
    t.add_root("s", 9);
    return make_table(std::move(t));
}

int rint(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

CoeffPoly random_coeff(std::mt19937_64& rng, const SymbolTableRef& tab) {
    CoeffPoly c(tab);
    int terms = rint(rng, 1, 2);
    for (int j = 0; j < terms; ++j) {
        CoeffPoly t = CoeffPoly::constant(tab, rint(rng, -9, 9));
        for (std::size_t i = 0; i < tab->size(); ++i)
            t *= CoeffPoly::symbol(tab, i).pow(static_cast<unsigned>(rint(rng, 0, 2)));
        c += t;
    }
    return c;
}

RelPoly random_poly(std::mt19937_64& rng, const SymbolTableRef& tab, int max_terms = 5) {
    RelPoly p(tab);
    int terms = rint(rng, 0, max_terms);
    for (int i = 0; i < terms; ++i) {
        Monomial4 m;
        for (int k = 0; k < 4; ++k) m.e[k] = static_cast<unsigned>(rint(rng, 0, 2));
        p.add_term(m, random_coeff(rng, tab));
    }
    return p;
}

std::vector<mpq_class> random_consts(std::mt19937_64& rng, const SymbolTableRef& tab) {
    std::vector<mpq_class> vals(tab->size());
    for (std::size_t i = 0; i < tab->size(); ++i) {
        const ConstSymbol& s = tab->at(i);
        if (s.is_root)
            vals[i] = (rng() & 1) ? mpq_class(3) : mpq_class(-3);
        else
            vals[i] = mpq_class(rint(rng, -20, 20));
    }
    return vals;
}

std::array<mpq_class, 4> random_sl2_point(std::mt19937_64& rng) {
    mpq_class u(rint(rng, -30, 30)), v(rint(rng, -30, 30)), w(rint(rng, -30, 30));
    mpq_class x11 = 1 + u * v;
    return {x11, x11 * w + u, v, v * w + 1};
}

}  // namespace

TEST_CASE("coefficient polynomials normalize root squares") {
    auto tab = abs_table();
    CoeffPoly s = CoeffPoly::symbol(tab, "s");
    CHECK(s * s == CoeffPoly::constant(tab, 9));
    CHECK(s.pow(3) == CoeffPoly::constant(tab, 9) * s);
    CHECK(s.pow(4) == CoeffPoly::constant(tab, 81));

    SymbolTable t2;
    t2.add_root("r", mpq_class(3, 4));
    auto tab2 = make_table(std::move(t2));
    CoeffPoly r = CoeffPoly::symbol(tab2, "r");
    CHECK(r * r == CoeffPoly::constant(tab2, mpq_class(3, 4)));
}

TEST_CASE("coefficient polynomial ring laws hold on random values") {
    auto tab = abs_table();
    std::mt19937_64 rng(11);
    for (int i = 0; i < 40; ++i) {
        CoeffPoly x = random_coeff(rng, tab), y = random_coeff(rng, tab),
                  z = random_coeff(rng, tab);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x - x).is_zero());
    }
}

TEST_CASE("canonical text of the ideal generator") {
    auto tab = empty_table();
    CHECK(det_generator(tab).to_string() == "X11*X22 - X12*X21 - 1");
    CHECK(det_form(tab).to_string() == "X11*X22 - X12*X21");
    CHECK(RelPoly::zero(tab).to_string() == "0");
    CHECK(RelPoly::constant(tab, mpq_class(1)).to_string() == "1");
    CHECK(RelPoly::constant(tab, mpq_class(-1)).to_string() == "-1");
    CHECK(RelPoly::constant(tab, mpq_class(3, 4)).to_string() == "3/4");
}

TEST_CASE("parsing the generator and the hand-expanded example") {
    auto tab = abs_table();
    RelPoly g = parse_relpoly("X11*X22 - X12*X21 - 1", tab);
    CHECK(g == det_generator(tab));

    RelPoly f = parse_relpoly("2*a*X12*X22 - b*X12^2", tab);
    auto rules = f.coefficient_rules();
    REQUIRE(rules.size() == 2);
    // Strict lex order puts X12^2 (e12=2) before X12*X22 (e12=1).
    CHECK(rules[0].first == Monomial4{{0, 2, 0, 0}});
    CHECK(rules[0].second == -CoeffPoly::symbol(tab, "b"));
    CHECK(rules[1].first == Monomial4{{0, 1, 0, 1}});
    CHECK(rules[1].second == CoeffPoly::constant(tab, 2) * CoeffPoly::symbol(tab, "a"));
    CHECK(f.to_string() == "-b*X12^2 + 2*a*X12*X22");
}

TEST_CASE("parse errors carry positions") {
    auto tab = abs_table();
    CHECK_THROWS_WITH_AS(parse_relpoly("X11 + ", tab), "syntax error at offset 6",
                         ParseError);
    try {
        parse_relpoly("X11 + ", tab);
    } catch (const ParseError& e) {
        CHECK(e.offset == 6);
    }
    CHECK_THROWS_AS(parse_relpoly("X11 * q", tab), ParseError);
    try {
        parse_relpoly("X11 * q", tab);
    } catch (const ParseError& e) {
        CHECK(e.offset == 6);
        CHECK(std::string(e.what()).find("undeclared identifier") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_relpoly("X11 / 2", tab), ParseError);
    CHECK_THROWS_AS(parse_relpoly("1/0", tab), ParseError);
    CHECK_THROWS_AS(parse_relpoly("(X11", tab), ParseError);
    CHECK_THROWS_AS(parse_relpoly("X11 $ X12", tab), ParseError);
}

TEST_CASE("rational literals and unary signs parse") {
    auto tab = abs_table();
    CHECK(parse_relpoly("3/4", tab) == RelPoly::constant(tab, mpq_class(3, 4)));
    CHECK(parse_relpoly("6/8", tab) == RelPoly::constant(tab, mpq_class(3, 4)));
    CHECK(parse_relpoly("-X12", tab) == -RelPoly::variable(tab, 1));
    CHECK(parse_relpoly("+X12", tab) == RelPoly::variable(tab, 1));
    CHECK(parse_relpoly("2*(X11 - 1)", tab) ==
          parse_relpoly("2*X11 - 2", tab));
    CHECK(parse_relpoly("(-a + 1)*X11", tab) ==
          parse_relpoly("X11 - a*X11", tab));
    CHECK(parse_relpoly("X11^0", tab) == RelPoly::constant(tab, mpq_class(1)));
}

TEST_CASE("ring arithmetic identities") {
    auto tab = abs_table();
    RelPoly x12 = RelPoly::variable(tab, 1);
    CHECK((x12 + (-x12)).is_zero());
    RelPoly g = det_generator(tab);
    CHECK(g * RelPoly::constant(tab, mpq_class(1)) == g);
    RelPoly lhs = parse_relpoly("(X11*X22 - X12*X21) * X11", tab);
    CHECK(lhs == parse_relpoly("X11^2*X22 - X11*X12*X21", tab));
}

TEST_CASE("mixed symbol tables are rejected") {
    auto tab = abs_table();
    SymbolTable o;
    o.add_free("c");
    auto tab2 = make_table(std::move(o));
    RelPoly f = RelPoly::variable(tab, 0);
    RelPoly h = RelPoly::variable(tab2, 0);
    CHECK_THROWS_AS(f + h, std::invalid_argument);
    CHECK_THROWS_AS(f * h, std::invalid_argument);
    CHECK_THROWS_AS(f * CoeffPoly::symbol(tab2, "c"), std::invalid_argument);
    // Equal contents in distinct objects are compatible.
    SymbolTable copy1, copy2;
    copy1.add_free("c");
    copy2.add_free("c");
    RelPoly p1 = RelPoly::variable(make_table(std::move(copy1)), 2);
    RelPoly p2 = RelPoly::variable(make_table(std::move(copy2)), 2);
    CHECK(p1 + p2 == p1 * mpq_class(2));
}

TEST_CASE("adjugate of fixed matrices") {
    auto tab = abs_table();
    PolyMatrix2 y = PolyMatrix2::generic(tab);
    PolyMatrix2 adj = y.adjugate();
    CHECK(adj.a[0] == RelPoly::variable(tab, 3));
    CHECK(adj.a[1] == -RelPoly::variable(tab, 1));
    CHECK(adj.a[2] == -RelPoly::variable(tab, 2));
    CHECK(adj.a[3] == RelPoly::variable(tab, 0));

    PolyMatrix2 id = PolyMatrix2::identity(tab);
    CHECK(id.adjugate() == id);

    CoeffPoly a = CoeffPoly::symbol(tab, "a"), b = CoeffPoly::symbol(tab, "b");
    PolyMatrix2 m = PolyMatrix2::from_coeffs(tab, {a, CoeffPoly(tab), b, -a});
    PolyMatrix2 expect = PolyMatrix2::from_coeffs(tab, {-a, CoeffPoly(tab), -b, a});
    CHECK(m.adjugate() == expect);
}

TEST_CASE("adjugate law on random matrices") {
    auto tab = abs_table();
    std::mt19937_64 rng(23);
    for (int i = 0; i < 15; ++i) {
        PolyMatrix2 m{{{random_poly(rng, tab, 3), random_poly(rng, tab, 3),
                        random_poly(rng, tab, 3), random_poly(rng, tab, 3)}}};
        PolyMatrix2 prod = m * m.adjugate();
        RelPoly det = m.det();
        CHECK(prod.a[0] == det);
        CHECK(prod.a[1].is_zero());
        CHECK(prod.a[2].is_zero());
        CHECK(prod.a[3] == det);
    }
}

TEST_CASE("conjugation matrix reproduces the expanded entries") {
    auto tab = abs_table();
    CoeffPoly a = CoeffPoly::symbol(tab, "a"), b = CoeffPoly::symbol(tab, "b");
    PolyMatrix2 z = conjugation_matrix(tab, {a, CoeffPoly(tab), b, -a});
    CHECK(z.a[1] == parse_relpoly("2*a*X12*X22 - b*X12^2", tab));
    CHECK(z.a[0] == parse_relpoly("a*X11*X22 - b*X11*X12 + a*X12*X21", tab));
    CHECK(z.a[2] == parse_relpoly("b*X11^2 - 2*a*X11*X21", tab));
    CHECK((z.a[0] + z.a[3]).is_zero());
    for (const RelPoly& entry : z.a) {
        auto deg = entry.homogeneous_degree();
        REQUIRE(deg.has_value());
        if (!entry.is_zero()) CHECK(*deg == 2);
    }

    CoeffPoly one = CoeffPoly::constant(tab, 1);
    PolyMatrix2 zi = conjugation_matrix(tab, {one, CoeffPoly(tab), CoeffPoly(tab), one});
    CHECK(zi.a[1].is_zero());
    CHECK(zi.a[2].is_zero());
    CHECK(zi.a[0] == det_form(tab));
    CHECK(zi.a[3] == det_form(tab));
}

TEST_CASE("trace law for trace-zero constant matrices") {
    auto tab = abs_table();
    std::mt19937_64 rng(31);
    for (int i = 0; i < 20; ++i) {
        CoeffPoly a = random_coeff(rng, tab), b = random_coeff(rng, tab),
                  c = random_coeff(rng, tab);
        PolyMatrix2 z = conjugation_matrix(tab, {a, b, c, -a});
        CHECK(z.trace().is_zero());
    }
}

TEST_CASE("reduction of the worked examples") {
    auto tab = abs_table();
    RelPoly f = parse_relpoly("X11*X22", tab);
    ReductionResult red = reduce_sl2(f);
    CHECK(red.quotient == RelPoly::constant(tab, mpq_class(1)));
    CHECK(red.remainder == parse_relpoly("X12*X21 + 1", tab));

    ReductionResult rg = reduce_sl2(det_generator(tab));
    CHECK(rg.quotient == RelPoly::constant(tab, mpq_class(1)));
    CHECK(rg.remainder.is_zero());

    RelPoly ram0 = parse_relpoly("2*a*X12*X22 - b*X12^2", tab);
    ReductionResult r0 = reduce_sl2(ram0);
    CHECK(r0.quotient.is_zero());
    CHECK(r0.remainder == ram0);
}

TEST_CASE("division identity and remainder support on random inputs") {
    auto tab = abs_table();
    std::mt19937_64 rng(47);
    RelPoly g = det_generator(tab);
    const Monomial4 lm{{1, 0, 0, 1}};
    for (int i = 0; i < 60; ++i) {
        RelPoly f = random_poly(rng, tab);
        ReductionResult red = reduce_sl2(f);
        CHECK(red.quotient * g + red.remainder == f);
        for (const auto& [m, c] : red.remainder.terms()) CHECK_FALSE(m.divisible_by(lm));
    }
}

TEST_CASE("normal form is stable under adding ideal elements") {
    auto tab = abs_table();
    std::mt19937_64 rng(59);
    RelPoly g = det_generator(tab);
    for (int i = 0; i < 40; ++i) {
        RelPoly f = random_poly(rng, tab);
        RelPoly u = random_poly(rng, tab, 3);
        CHECK(reduce_sl2(f + u * g).remainder == reduce_sl2(f).remainder);
    }
}

TEST_CASE("reduction preserves values on determinant-one points") {
    auto tab = abs_table();
    std::mt19937_64 rng(67);
    for (int i = 0; i < 40; ++i) {
        RelPoly f = random_poly(rng, tab);
        RelPoly rem = reduce_sl2(f).remainder;
        auto consts = random_consts(rng, tab);
        auto x = random_sl2_point(rng);
        CHECK(f.evaluate(x, consts) == rem.evaluate(x, consts));
    }
}

TEST_CASE("ideal membership answers") {
    auto tab = abs_table();
    RelPoly g = det_generator(tab);
    CHECK(in_ideal(g * RelPoly::variable(tab, 1)));
    CHECK_FALSE(in_ideal(RelPoly::variable(tab, 1)));
    RelPoly f = parse_relpoly("X11*X22 - 1", tab);
    CHECK_FALSE(in_ideal(f));
    CHECK(reduce_sl2(f).remainder == parse_relpoly("X12*X21", tab));
}

TEST_CASE("coefficient rules of the generator") {
    auto tab = abs_table();
    auto rules = det_generator(tab).coefficient_rules();
    REQUIRE(rules.size() == 3);
    CHECK(rules[0].first == Monomial4{{1, 0, 0, 1}});
    CHECK(rules[0].second == CoeffPoly::constant(tab, 1));
    CHECK(rules[1].first == Monomial4{{0, 1, 1, 0}});
    CHECK(rules[1].second == CoeffPoly::constant(tab, -1));
    CHECK(rules[2].first == Monomial4{});
    CHECK(rules[2].second == CoeffPoly::constant(tab, -1));
    CHECK(RelPoly::zero(tab).coefficient_rules().empty());
}

TEST_CASE("evaluation of the worked examples") {
    auto tab = abs_table();
    std::array<mpq_class, 4> id = {1, 0, 0, 1};
    std::vector<mpq_class> consts = {1, 1, 3};
    CHECK(det_generator(tab).evaluate(id, consts) == 0);
    CHECK(RelPoly::variable(tab, 1).evaluate(id, consts) == 0);
    RelPoly ram0 = parse_relpoly("2*a*X12*X22 - b*X12^2", tab);
    std::array<mpq_class, 4> x = {0, 1, -1, 0};
    CHECK(ram0.evaluate(x, consts) == -1);
}

TEST_CASE("evaluation rejects bad assignments") {
    auto tab = abs_table();
    RelPoly f = parse_relpoly("a*X11 + s", tab);
    std::array<mpq_class, 4> id = {1, 0, 0, 1};
    CHECK_THROWS_AS(f.evaluate(id, {1, 1}), std::invalid_argument);           // missing value
    CHECK_THROWS_AS(f.evaluate(id, {1, 1, 2}), std::invalid_argument);        // 2^2 != 9
    CHECK(f.evaluate(id, {1, 1, -3}) == -2);
}

TEST_CASE("parser round-trips canonical text") {
    auto tab = abs_table();
    std::mt19937_64 rng(73);
    for (int i = 0; i < 80; ++i) {
        RelPoly f = random_poly(rng, tab);
        CHECK(parse_relpoly(f.to_string(), tab) == f);
    }
}

TEST_CASE("homogeneous degree query") {
    auto tab = abs_table();
    CHECK(*det_form(tab).homogeneous_degree() == 2);
    CHECK_FALSE(det_generator(tab).homogeneous_degree().has_value());
    CHECK(*RelPoly::zero(tab).homogeneous_degree() == 0);
}

TEST_CASE("homogenization against the determinant form") {
    auto tab = abs_table();
    RelPoly h = homogenize_det(parse_relpoly("X11*X22 + 1", tab));
    CHECK(*h.homogeneous_degree() == 2);
    CHECK(h == parse_relpoly("2*X11*X22 - X12*X21", tab));
    // The generator's own homogenization collapses: its top part is the form.
    CHECK(homogenize_det(det_generator(tab)).is_zero());

    std::mt19937_64 rng(83);
    for (int i = 0; i < 20; ++i) {
        // Even-degree-gap polynomials: squares of random polynomials plus a constant.
        RelPoly f = random_poly(rng, tab, 3);
        RelPoly sq = f * f + RelPoly::constant(tab, mpq_class(rint(rng, -5, 5)));
        RelPoly hom = [&] {
            try {
                return homogenize_det(sq);
            } catch (const std::invalid_argument&) {
                return RelPoly::zero(tab);  // odd gap, skip value check
            }
        }();
        if (hom.is_zero() && !sq.is_zero()) continue;
        auto consts = random_consts(rng, tab);
        auto x = random_sl2_point(rng);
        CHECK(sq.evaluate(x, consts) == hom.evaluate(x, consts));
    }
    CHECK_THROWS_AS(homogenize_det(parse_relpoly("X11 + 1", tab)), std::invalid_argument);
}
